"""Compute a triple Aeppli-Bott-Chern-Massey product, check its certificate,
then tamper with one coefficient and watch the replay reject it."""

import json

from nilforms import BCClass, HermitianMetric, catalog, parse_form, triple_abc, verify_certificate
from nilforms.massey import certificate_failures

pres = catalog("kt_kt")
a, b, c = (BCClass(parse_form(t, 4), pres) for t in ("e1^~e1", "e3^~e3", "e3"))
cert = triple_abc(a, b, c, HermitianMetric.identity(4))
print(f"verdict: {cert.verdict}")
print(f"primitive of a^b:  {cert.f_ab}")
print(f"representative:    {cert.representative}")
print(f"witness functional: {cert.witness}")

doc = json.loads(cert.dumps())
print(f"\nreplay of the genuine certificate: {'valid' if verify_certificate(doc) else 'invalid'}")

doc["primitives"]["f_ab"] += " + e1^~e1"
print("after adding eta^{11bar} to the stored primitive:")
for line in certificate_failures(doc):
    print(f"  - {line}")
