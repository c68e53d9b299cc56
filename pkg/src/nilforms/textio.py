"""Text syntax for forms and structure files.

Forms::

    (1,0)*e1^~e1 - 1/2*e2^~e3 + (0,-1)*e1^e2 + 3

``e<j>`` is eta^j and ``~e<j>`` its conjugate.  A coefficient is ``(re,im)``,
a bare rational, ``i``, or any parenthesised Q(i) literal such as ``(1-3i)``.

Structure files::

    # comment
    dim = 4
    d2 = (1,0)*e1^~e1
    d4 = e3^~e3
    metric = diag(1, 1, 1, 1)        # or n lines of: metric_row = h11, h12, ...
"""

from __future__ import annotations

import re
from fractions import Fraction

from .forms import Form, indices_of, monomial_sort_key
from .scalars import GaussianRational, parse_scalar

__all__ = ["ParseError", "format_form", "parse_form", "parse_structure", "format_structure", "format_coeff"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        self.message = message
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)


def _fmt_rat(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_coeff(c: GaussianRational) -> str:
    if c.is_real():
        return _fmt_rat(c.re)
    return f"({_fmt_rat(c.re)},{_fmt_rat(c.im)})"


def format_monomial(m) -> str:
    parts = [f"e{k}" for k in indices_of(m[0])] + [f"~e{k}" for k in indices_of(m[1])]
    return "^".join(parts)


def format_form(f: Form) -> str:
    if not f:
        return "0"
    out = []
    for m in sorted(f.terms, key=monomial_sort_key):
        c = f.coefficient(m)
        mono = format_monomial(m)
        neg = c.is_real() and c.re < 0
        mag = -c if neg else c
        if not mono:
            body = format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coeff(mag)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class _Cursor:
    def __init__(self, text: str, line: int | None, col0: int):
        self.s = text
        self.i = 0
        self.line = line
        self.col0 = col0

    def error(self, msg, at=None):
        at = self.i if at is None else at
        return ParseError(msg, self.line, self.col0 + at + 1)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch):
        if self.peek() == ch:
            self.i += 1
            return True
        return False


_RAT = re.compile(r"[0-9]+(?:\.[0-9]+)?(?:/[0-9]+)?")
_FACTOR = re.compile(r"(~?)e([0-9]+)")


def _parse_coeff(cur: _Cursor):
    """Parse an optional coefficient; return None when the term starts with a factor."""
    ch = cur.peek()
    start = cur.i
    if ch == "(":
        depth = 0
        j = cur.i
        while j < len(cur.s):
            if cur.s[j] == "(":
                depth += 1
            elif cur.s[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth != 0:
            raise cur.error("unbalanced parenthesis")
        lit = cur.s[cur.i : j + 1]
        cur.i = j + 1
        try:
            return parse_scalar(lit)
        except ValueError as exc:
            raise cur.error(f"irrational or malformed coefficient {lit!r}", start) from exc
    m = _RAT.match(cur.s, cur.i)
    if m:
        cur.i = m.end()
        val = Fraction(m.group(0).split("/")[0])
        if "/" in m.group(0):
            den = int(m.group(0).split("/")[1])
            if den == 0:
                raise cur.error("zero denominator", start)
            val /= den
        if cur.peek() == "*" and cur.s[cur.i + 1 : cur.i + 2].strip() in ("i", "I") and not cur.s[cur.i + 2 : cur.i + 3].isalnum():
            cur.i += 2
            return GaussianRational(0, val)
        if cur.i < len(cur.s) and cur.s[cur.i] in "iI" and not cur.s[cur.i + 1 : cur.i + 2].isalnum():
            cur.i += 1
            return GaussianRational(0, val)
        return GaussianRational(val)
    if ch in ("i", "I") and not cur.s[cur.i + 1 : cur.i + 2].isalnum():
        cur.i += 1
        return GaussianRational(0, 1)
    if ch in ("~", "e"):
        return None
    if ch and (ch.isalpha() or ch in "√^.,"):
        raise cur.error(f"irrational or malformed coefficient near {cur.s[cur.i:cur.i + 8]!r}")
    raise cur.error("expected a coefficient or a monomial")


def _parse_monomial(cur: _Cursor, n: int):
    factors = []
    seen = set()
    while True:
        cur.skip()
        start = cur.i
        m = _FACTOR.match(cur.s, cur.i)
        if not m:
            raise cur.error("expected a factor e<j> or ~e<j>")
        k = int(m.group(2))
        barred = bool(m.group(1))
        if not 1 <= k <= n:
            raise cur.error(f"index {k} out of range 1..{n}", start)
        if (k, barred) in seen:
            raise cur.error(f"repeated factor {m.group(0)} makes the term vanish", start)
        seen.add((k, barred))
        factors.append((k, barred))
        cur.i = m.end()
        if not cur.eat("^"):
            return factors


def parse_form(text: str, n: int, line: int | None = None, col0: int = 0) -> Form:
    """Parse the textual form syntax in complex dimension ``n``."""
    cur = _Cursor(text, line, col0)
    if not cur.peek():
        raise cur.error("empty form")
    total = Form.zero(n)
    first = True
    while cur.peek():
        sign = 1
        if cur.eat("+"):
            pass
        elif cur.eat("-"):
            sign = -1
        elif not first:
            raise cur.error("expected '+' or '-' between terms")
        first = False
        coeff = _parse_coeff(cur)
        if coeff is not None and not cur.eat("*"):
            nxt = cur.peek()
            if nxt in ("e", "~"):
                factors = _parse_monomial(cur, n)
            elif nxt in ("", "+", "-"):
                factors = []
            else:
                raise cur.error("expected '*' before the monomial")
        else:
            factors = _parse_monomial(cur, n)
        c = coeff if coeff is not None else GaussianRational(1)
        total = total + Form.from_factors(n, factors, c * sign)
    return total


def _split_scalars(text: str):
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


_ASSIGN = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$")


def parse_structure(text: str):
    """Parse a structure file into ``(StructurePresentation, HermitianMetric or None)``."""
    from .metrics import HermitianMetric, InvalidMetric
    from .structure import InvalidPresentation, StructurePresentation

    n = None
    d_eta: dict[int, Form] = {}
    metric_rows: list = []
    metric_diag = None
    metric_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _ASSIGN.match(body)
        if not m:
            raise ParseError("expected '<name> = <value>'", lineno, 1)
        key, value = m.group(1), m.group(2)
        vcol = m.start(2)
        if key == "dim":
            try:
                val = int(value.strip())
            except ValueError:
                raise ParseError(f"dimension must be an integer, got {value.strip()!r}", lineno, vcol + 1) from None
            if n is not None and val != n:
                raise ParseError(f"inconsistent dim: {val} after {n}", lineno, vcol + 1)
            if not 1 <= val <= 32:
                raise ParseError("dimension must be between 1 and 32", lineno, vcol + 1)
            n = val
            continue
        if n is None:
            raise ParseError("'dim = <n>' must come first", lineno, 1)
        dm = re.fullmatch(r"d([0-9]+)", key)
        if dm:
            k = int(dm.group(1))
            if not 1 <= k <= n:
                raise ParseError(f"index {k} out of range 1..{n}", lineno, 2)
            if k in d_eta:
                raise ParseError(f"d{k} given twice", lineno, 1)
            d_eta[k] = parse_form(value, n, lineno, vcol)
            continue
        if key == "metric":
            mm = re.fullmatch(r"\s*diag\s*\((.*)\)\s*", value)
            if not mm:
                raise ParseError("expected metric = diag(h1, ..., hn)", lineno, vcol + 1)
            try:
                metric_diag = [parse_scalar(s) for s in _split_scalars(mm.group(1))]
            except ValueError as exc:
                raise ParseError(str(exc), lineno, vcol + 1) from None
            if len(metric_diag) != n:
                raise ParseError(f"inconsistent dim: metric has {len(metric_diag)} entries, dim = {n}", lineno, vcol + 1)
            metric_line = lineno
            continue
        if key == "metric_row":
            try:
                row = [parse_scalar(s) for s in _split_scalars(value)]
            except ValueError as exc:
                raise ParseError(str(exc), lineno, vcol + 1) from None
            if len(row) != n:
                raise ParseError(f"inconsistent dim: metric row has {len(row)} entries, dim = {n}", lineno, vcol + 1)
            metric_rows.append(row)
            metric_line = lineno
            continue
        raise ParseError(f"unknown identifier {key!r}", lineno, 1)
    if n is None:
        raise ParseError("missing 'dim = <n>'")
    if metric_diag is not None and metric_rows:
        raise ParseError("give the metric either as diag(...) or as rows, not both", metric_line)
    if metric_rows and len(metric_rows) != n:
        raise ParseError(f"inconsistent dim: {len(metric_rows)} metric rows, dim = {n}", metric_line)
    try:
        pres = StructurePresentation(n, [d_eta.get(k, Form.zero(n)) for k in range(1, n + 1)])
    except InvalidPresentation as exc:
        raise ParseError(str(exc)) from None
    metric = None
    try:
        if metric_diag is not None:
            metric = HermitianMetric.diag(metric_diag)
        elif metric_rows:
            metric = HermitianMetric(metric_rows)
    except InvalidMetric as exc:
        raise ParseError(str(exc), metric_line) from None
    return pres, metric


def format_structure(pres, metric=None) -> str:
    lines = [f"dim = {pres.n}"]
    for k, f in enumerate(pres.d_eta, 1):
        if f:
            lines.append(f"d{k} = {format_form(f)}")
    if metric is not None:
        if metric.is_diagonal:
            lines.append("metric = diag(" + ", ".join(format_coeff(metric.H[i][i]) for i in range(metric.n)) + ")")
        else:
            for row in metric.H:
                lines.append("metric_row = " + ", ".join(format_coeff(x) for x in row))
    return "\n".join(lines) + "\n"
