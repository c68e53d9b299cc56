"""The 5-dimensional blowup ingredients and the obstruction on the quotient 3-fold.

First the powers of F on fam5_blowup: dd^c F is nonzero while dd^c F^2 and
dd^c F^3 vanish.  Then dd^c of a real (1,1)-form on y3 is projected to bidegree
(2,2) and split along sigma psi ^ conj(psi).
"""

from nilforms import HermitianMetric, catalog, ddc, format_form, fundamental_power, parse_form, pluriclosed_obstruction

pres = catalog("fam5_blowup")
H = HermitianMetric.identity(5)
for k in (1, 2, 3):
    r = ddc(pres, fundamental_power(H, k))
    print(f"dd^c F^{k} = {format_form(r) if r else 0}")

y3 = catalog("y3", {"a4": 1, "c4": 2})
for text in ("-e3^~e3", "-i*e3^~e3"):
    res = pluriclosed_obstruction(y3, parse_form(text, 3), 1)
    print(f"\nalpha = {text}")
    print(f"  (dd^c alpha)^(2,2) = {format_form(res.beta)}")
    print(f"  verdict {res.verdict}, ray {res.ray}, real coefficients: {res.strict}")
