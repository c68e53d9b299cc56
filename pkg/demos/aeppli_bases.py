"""Aeppli cohomology of the KT x KT product, from dimensions down to bases.

Prints the h_A^{p,q} table, the (1,0) and (1,1) harmonic bases for H = Id, and
checks which coordinate (1,1)-forms are del- or delbar-exact.
"""

from nilforms import HermitianMetric, catalog, cohomology_dims, del_, delbar, format_form, harmonic_basis, in_span, parse_form

pres = catalog("kt_kt")
H = HermitianMetric.identity(4)
print(cohomology_dims(pres, "Aeppli").grid())
for bd in ((1, 0), (1, 1)):
    hb = harmonic_basis(pres, "Aeppli", *bd, H)
    print(f"\nharmonic Aeppli {bd}: {len(hb)} forms")
    for h in hb.basis:
        print(f"  {format_form(h)}")

exact = [del_(pres, parse_form(f"~e{k}", 4)) for k in range(1, 5)] + [delbar(pres, parse_form(f"e{k}", 4)) for k in range(1, 5)]
for t in ("e3^~e3", "e4^~e4", "e1^~e1"):
    print(f"{t}: exact in Aeppli sense? {in_span(parse_form(t, 4), [f for f in exact if f])}")
