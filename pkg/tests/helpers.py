"""Shared fixtures-free helpers for the test suite: random exact scalars, the
certificate mutator, and small number-theory utilities."""

from __future__ import annotations

import copy
import random
from fractions import Fraction
from math import isqrt

from nilforms import Form, GaussianRational, parse_form
from nilforms.forms import basis
from nilforms.scalars import format_scalar, parse_scalar
from nilforms.textio import format_form, parse_structure

ZERO = GaussianRational(0)


def rgr(rng: random.Random, span: int = 3, den: int = 3, zero_prob: float = 0.0) -> GaussianRational:
    """A small random Gaussian rational."""
    if zero_prob and rng.random() < zero_prob:
        return ZERO
    return GaussianRational(Fraction(rng.randint(-span, span), rng.randint(1, den)), Fraction(rng.randint(-span, span), rng.randint(1, den)))


def rgr_nonzero(rng, span=3, den=3) -> GaussianRational:
    while True:
        z = rgr(rng, span, den)
        if z:
            return z


def re2(z: GaussianRational) -> Fraction:
    """``2 Re z``."""
    return 2 * z.re


def norm_root(r: Fraction):
    """Some ``z`` in Q(i) with ``|z|^2 = r``, or None when r is not a norm (small search)."""
    r = Fraction(r)
    if r < 0:
        return None
    if r == 0:
        return ZERO
    N = r.numerator * r.denominator
    if N > 10**8:
        return None
    for x in range(isqrt(N) + 1):
        y2 = N - x * x
        y = isqrt(y2)
        if y * y == y2:
            return GaussianRational(Fraction(x, r.denominator), Fraction(y, r.denominator))
    return None


def random_form(rng, n, p, q, density=0.5, span=2) -> Form:
    terms = {}
    for m in basis(n, p, q):
        if rng.random() < density:
            c = rgr(rng, span, 2)
            if c:
                terms[m] = c
    return Form(n, terms)


# certificate mutation -------------------------------------------------------------


def _add(bd, d):
    return (bd[0] + d[0], bd[1] + d[1])


def _bd(text, n):
    f = parse_form(text, n)
    return f.bidegree


def mutation_sites(doc: dict) -> list[tuple]:
    """Every (path, slot, bidegree) a single-coefficient perturbation can touch.

    Only the computed content is mutated: primitives, duals, representative,
    harmonic generators, decomposition, witnesses and multipliers.  The inputs
    (structure, metric, classes) pose the question and are left alone.
    """
    n = parse_structure(doc["structure"])[0].n
    a, b, c = (_bd(doc["inputs"][k], n) for k in "abc")
    ab, bc = _add(a, b), _add(b, c)
    PQ = (a[0] + b[0] + c[0] - 1, a[1] + b[1] + c[1] - 1)
    src_a, src_c = (PQ[0] - a[0], PQ[1] - a[1]), (PQ[0] - c[0], PQ[1] - c[1])
    sites = []

    def form_site(path, bd):
        if 0 <= bd[0] <= n and 0 <= bd[1] <= n:
            sites.extend((path, m, bd) for m in basis(n, *bd))

    if doc["verdict"] == "undefined":
        pb = ab if doc["undefined"]["product"] == "ab" else bc
        form_site(("undefined", "witness"), pb)
        form_site(("undefined", "dual"), pb)
        form_site(("undefined", "preimage"), _add(pb, (-1, -1)))
        return sites
    form_site(("primitives", "f_ab"), _add(ab, (-1, -1)))
    form_site(("primitives", "f_bc"), _add(bc, (-1, -1)))
    form_site(("primitives", "dual_ab"), ab)
    form_site(("primitives", "dual_bc"), bc)
    form_site(("representative",), PQ)
    for side, src in (("harmonic_a_side", src_a), ("harmonic_c_side", src_c)):
        for i in range(len(doc["indeterminacy"][side])):
            form_site(("indeterminacy", side, i), src)
    dec = doc["decomposition"]
    for side in ("coeffs_a_side", "coeffs_c_side"):
        sites.extend((("decomposition", side, i), None, None) for i in range(len(dec[side])))
    form_site(("decomposition", "R"), _add(PQ, (-1, 0)))
    form_site(("decomposition", "S"), _add(PQ, (0, -1)))
    form_site(("decomposition", "dual"), PQ)
    if doc["verdict"] == "nonzero":
        form_site(("witness", "functional"), PQ)
        form_site(("witness", "z_alpha"), _add(src_a, (1, 1)))
        form_site(("witness", "z_gamma"), _add(src_c, (1, 1)))
        form_site(("witness", "dual_z_alpha"), src_a)
        form_site(("witness", "dual_z_gamma"), src_c)
    return sites


def _get(doc, path):
    x = doc
    for k in path[:-1]:
        x = x[k]
    return x, path[-1]


def mutate(doc: dict, site, delta: GaussianRational) -> dict:
    """Copy of ``doc`` with one coefficient shifted by ``delta``."""
    n = parse_structure(doc["structure"])[0].n
    out = copy.deepcopy(doc)
    path, mono, _ = site
    holder, key = _get(out, path)
    if mono is None:
        holder[key] = format_scalar(parse_scalar(holder[key]) + delta)
        return out
    text = holder[key]
    f = Form.zero(n) if text is None or text.strip() == "0" else parse_form(text, n)
    holder[key] = format_form(f + Form(n, {mono: delta}))
    return out
