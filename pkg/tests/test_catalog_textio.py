"""Catalog entries against their documented expansions, and the text formats."""

import random
import re
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_form, rgr, rgr_nonzero
from nilforms import (
    CatalogError,
    Form,
    GaussianRational,
    HermitianMetric,
    ParseError,
    catalog,
    catalog_names,
    format_form,
    parse_form,
    parse_structure,
    random_metric,
)
from nilforms.catalog import get_entry
from nilforms.textio import format_structure

# independent reader for the documented expansions ------------------------------------

_LINE = re.compile(r"^\s*d(\d+) = (.+)$")
_FACTOR = re.compile(r"^(~?)e(\d+)$")


def _scalar_token(tok):
    if tok.startswith("("):
        re_, im = tok[1:-1].split(",")
        return GaussianRational(Fraction(re_), Fraction(im))
    return GaussianRational(Fraction(tok))


def _monomial(tok, n):
    """``(sign, key)`` after sorting factors into eta^I ^ etabar^J order."""
    factors = []
    for part in tok.split("^"):
        m = _FACTOR.match(part)
        factors.append((1 if m.group(1) else 0, int(m.group(2))))
    if len(set(factors)) < len(factors):
        return 0, None
    inversions = sum(1 for i in range(len(factors)) for j in range(i + 1, len(factors)) if factors[i] > factors[j])
    un = sum(1 << (k - 1) for b, k in factors if not b)
    ba = sum(1 << (k - 1) for b, k in factors if b)
    return (-1) ** inversions, (un, ba)


def documented_structure(doc, n, values):
    text = doc.split("Reference expansion", 1)[1]
    out = {k: {} for k in range(1, n + 1)}
    for line in text.splitlines():
        m = _LINE.match(line)
        if not m:
            continue
        k, rhs = int(m.group(1)), m.group(2).strip()
        rhs = "+ " + rhs
        for sign, term in re.findall(r"([+-])\s+(\S+)", rhs):
            coeff = GaussianRational(-1 if sign == "-" else 1)
            mono = None
            for tok in term.split("*"):
                if tok[0] in "(0123456789" or tok[0] == "-":
                    coeff = coeff * _scalar_token(tok)
                elif "e" in tok and all(_FACTOR.match(p) for p in tok.split("^")):
                    mono = tok
                else:
                    coeff = coeff * values[tok]
            s, key = _monomial(mono, n)
            if key is None:
                continue
            out[k][key] = out[k].get(key, GaussianRational(0)) + coeff * s
    return [Form(n, {m: c for m, c in out[k].items() if c}) for k in range(1, n + 1)]


def _draw(entry, rng):
    vals = {}
    for spec in entry.params:
        if spec.domain == "real":
            vals[spec.name] = GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) or 1)
        elif spec.domain == "complex":
            vals[spec.name] = rgr_nonzero(rng) if spec.nonzero else rgr(rng, zero_prob=0.2)
    return vals


@pytest.mark.parametrize("name", catalog_names())
def test_builder_matches_documented_expansion(name):
    entry = get_entry(name)
    rng = random.Random(name)
    draws = [{}] if any(p.domain == "int" for p in entry.params) else [{}] + [_draw(entry, rng) for _ in range(8)]
    for given_ in draws:
        values = {k: v for k, v in entry.resolve(given_).items() if isinstance(v, GaussianRational)}
        pres = catalog(name, given_)
        assert list(pres.d_eta) == documented_structure(entry.doc, pres.n, values), given_


def test_catalog_errors():
    with pytest.raises(CatalogError):
        catalog("no_such_entry")
    with pytest.raises(CatalogError):
        catalog("kt_kt", {"Z": 1})
    with pytest.raises(CatalogError):
        catalog("inoue_kt", {"alpha": "i"})
    with pytest.raises(CatalogError):
        catalog("abelian", {"n": "x"})


# text formats -------------------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_form_text_roundtrip(seed, n):
    rng = random.Random(seed)
    f = Form.zero(n)
    for _ in range(3):
        f = f + random_form(rng, n, rng.randint(0, n), rng.randint(0, n), density=0.3)
    assert parse_form(format_form(f), n) == f


def test_parse_form_orders_factors_with_signs():
    n = 3
    assert parse_form("~e1^e2", n) == -parse_form("e2^~e1", n)
    assert parse_form("e2^e1 + e1^e2", n) == Form.zero(n)
    with pytest.raises(ParseError):
        parse_form("e1^e1", n)
    assert parse_form("(1,2)*e1 - 1/2*i*e2", n) == Form(n, {(1, 0): GaussianRational(1, 2), (2, 0): GaussianRational(0, Fraction(-1, 2))})
    assert parse_form("0", n) == Form.zero(n) and parse_form("3", n) == Form.scalar(n, 3)


@pytest.mark.parametrize("text", ["e4", "e1^", "e1 +", "2**e1", "x1", "(1,2", "e0"])
def test_parse_form_errors(text):
    with pytest.raises(ParseError):
        parse_form(text, 3)


@pytest.mark.parametrize("name", catalog_names())
def test_structure_text_roundtrip(name):
    pres = catalog(name)
    H = random_metric(pres.n, random.Random(name))
    for metric in (None, HermitianMetric.identity(pres.n), H):
        p2, m2 = parse_structure(format_structure(pres, metric))
        assert p2 == pres and m2 == metric


@pytest.mark.parametrize(
    "text,line",
    [
        ("d1 = e2\n", 1),
        ("dim = 2\nd3 = e1^e2\n", 2),
        ("dim = 2\nd2 = e1^e2\nd2 = 0\n", 3),
        ("dim = 2\nmetric = diag(1)\n", 2),
        ("dim = 2\nfoo = 1\n", 2),
        ("dim = 2\nd2 = e1^^e2\n", 2),
        ("dim = 2\nmetric = diag(1, -1)\n", 2),
    ],
)
def test_structure_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_structure(text)
    assert exc.value.line == line


def test_structure_comments_and_missing_equations():
    pres, H = parse_structure("# KT\ndim = 4\nd2 = e1^~e1   # first\n\nd4 = e3^~e3\nmetric = diag(1, 2, 1, 1)\n")
    assert pres == catalog("kt_kt") and H == HermitianMetric.diag([1, 2, 1, 1])
