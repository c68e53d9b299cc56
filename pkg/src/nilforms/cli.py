"""``nilforms`` command line.

Every subcommand takes the structure either from a file (``--input``) or from
the built-in catalog (``--catalog NAME --param k=v``).  Human-readable output
goes to stdout; ``--json PATH`` writes the report document (``-`` for stdout).
Exit status is 0 whenever the computation ran, whatever its mathematical
outcome, 1 when ``verify`` rejects a certificate, and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import CatalogError, catalog_names, get_entry, parse_params
from .cohomology import KINDS, cohomology_dims, harmonic_basis, normalize_kind
from .forms import Form
from .metrics import HermitianMetric, InvalidMetric
from .scalars import format_scalar, parse_scalar
from .structure import InvalidPresentation
from .textio import ParseError, format_form, format_structure, parse_form, parse_structure

__all__ = ["main", "run_cli", "InputError"]

REPORT_SCHEMA_VERSION = 1


class InputError(Exception):
    pass


# input ---------------------------------------------------------------------------


def _load(args):
    """Return ``(pres, file_metric, echo)``."""
    if args.input and args.catalog:
        raise InputError("give either --input or --catalog, not both")
    if args.input:
        if args.param:
            raise InputError("--param only applies to --catalog")
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
        pres, metric = parse_structure(text)
        pres.require_valid()
        return pres, metric, {"source": "file", "path": str(args.input)}
    if args.catalog:
        entry = get_entry(args.catalog)
        params = entry.resolve(parse_params(args.param))
        pres = entry.build(params)
        pres.require_valid()
        shown = {k: (format_scalar(v) if not isinstance(v, int) else v) for k, v in sorted(params.items())}
        return pres, None, {"source": "catalog", "name": entry.name, "params": shown}
    raise InputError("no structure given: use --input FILE or --catalog NAME")


def _metric(spec: str | None, n: int, file_metric):
    if spec is None:
        return file_metric if file_metric is not None else HermitianMetric.identity(n)
    s = spec.strip()
    if s.lower() in ("id", "identity"):
        return HermitianMetric.identity(n)
    if s.lower() == "file":
        if file_metric is None:
            raise InputError("--metric file, but the input has no metric")
        return file_metric
    if s.lower().startswith("diag(") and s.endswith(")"):
        from .textio import _split_scalars

        vals = [parse_scalar(x) for x in _split_scalars(s[5:-1])]
        if len(vals) != n:
            raise InputError(f"metric has {len(vals)} entries, dimension is {n}")
        return HermitianMetric.diag(vals)
    if ";" in s:
        from .textio import _split_scalars

        rows = [[parse_scalar(x) for x in _split_scalars(r)] for r in s.split(";")]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"metric must be {n}x{n}")
        return HermitianMetric(rows)
    raise InputError(f"cannot read metric {spec!r}: use id, file, diag(h1,...,hn) or rows separated by ';'")


def _form(text: str, n: int) -> Form:
    t = text.strip()
    if t == "0":
        return Form.zero(n)
    return parse_form(t, n)


def _bidegree(text: str):
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bidegree must look like p,q, got {text!r}") from None
    return p, q


# subcommands ---------------------------------------------------------------------


def _cmd_check(args, pres, fm, out):
    rep = pres.validate()
    out.append(f"d^2 = 0: {'yes' if rep.jacobi_ok else 'no'}")
    out.append(f"integrable: {'yes' if rep.integrable else 'no'}")
    out.append(f"Salamon filtration: {'yes' if rep.salamon_filtration_ok else 'no'}")
    if rep.salamon_order:
        out.append("  order: " + " ".join(f"eta{k}" for k in rep.salamon_order))
    for line in rep.diagnostics:
        out.append(f"  {line}")
    return {"validation": rep.to_json(), "differential": {k: format_form(v) for k, v in pres.differential_on_generators().items()}}


def _cmd_cohomology(args, pres, fm, out):
    kinds = [normalize_kind(args.kind)] if args.kind else [k for k in KINDS if k == "deRham" or pres.integrable]
    tables = []
    for k in kinds:
        t = cohomology_dims(pres, k)
        tables.append(t.to_json())
        out.append(f"{k} (invariant):")
        out.append(t.grid())
    return {"cohomology": tables}


def _cmd_harmonic(args, pres, fm, out):
    H = _metric(args.metric, pres.n, fm)
    kind = normalize_kind(args.kind)
    n = pres.n
    bds = [_bidegree(args.bidegree)] if args.bidegree else [(p, q) for p in range(n + 1) for q in range(n + 1)]
    res = []
    for p, q in bds:
        hb = harmonic_basis(pres, kind, p, q, H)
        res.append(hb.to_json())
        out.append(f"{kind} harmonic ({p},{q}): dim {len(hb)}")
        for f in hb.basis:
            out.append(f"  {format_form(f)}")
    return {"metric": H.to_json(), "harmonic": res}


def _cmd_metric_check(args, pres, fm, out):
    from .special_metrics import check_condition

    H = _metric(args.metric, pres.n, fm)
    names = [c.strip() for c in args.conditions.split(",") if c.strip()]
    reports = []
    for nm in names:
        r = check_condition(pres, H, nm)
        reports.append(r.to_json())
        out.append(f"{r.name}: {'holds' if r.holds else 'fails'}  [{r.operator}]")
        if not r.holds:
            out.append(f"  residual: {format_form(r.residual)}")
    return {"metric": H.to_json(), "conditions": reports}


def _cmd_obstruct(args, pres, fm, out):
    from .special_metrics import pluriclosed_obstruction

    alpha = _form(args.alpha, pres.n)
    r = pluriclosed_obstruction(pres, alpha, args.p)
    out.append(f"p-pluriclosed-obstruction({args.p}): {r.verdict}")
    out.append(f"  projected dd^c(alpha): {format_form(r.beta)}")
    if r.obstructed:
        for mask, c in r.decomposition:
            from .textio import format_monomial

            out.append(f"  sigma psi^bar psi with psi = {format_monomial((mask, 0))}: coefficient {format_scalar(c)}")
    elif r.reason:
        out.append(f"  reason: {r.reason}")
    return {"obstruction": r.to_json()}


def _cmd_massey(args, pres, fm, out):
    from .massey import BCClass, triple_abc

    H = _metric(args.metric, pres.n, fm)
    try:
        classes = [BCClass(_form(t, pres.n), pres) for t in (args.a, args.b, args.c)]
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise InputError(str(exc)) from None
    cert = triple_abc(*classes, H)
    out.append(f"triple product: {cert.verdict}")
    if cert.verdict != "undefined":
        out.append(f"  f_ab = {format_form(cert.f_ab)}")
        out.append(f"  f_bc = {format_form(cert.f_bc)}")
        out.append(f"  representative = {format_form(cert.representative)}")
    if cert.verdict == "nonzero":
        out.append(f"  witness = {format_form(cert.witness)}")
    if args.certificate:
        Path(args.certificate).write_text(cert.dumps(), encoding="utf-8")
        out.append(f"  certificate written to {args.certificate}")
    return {"massey": cert.to_json()}


def _cmd_formal(args, pres, fm, out):
    from .formality import is_geometrically_BC_formal

    H = _metric(args.metric, pres.n, fm)
    r = is_geometrically_BC_formal(pres, H)
    out.append(f"geometrically Bott-Chern formal: {'yes' if r.formal else 'no'} ({r.checked_pairs} pairs checked)")
    if r.first_failure:
        a, b, res = r.first_failure
        out.append(f"  failing pair: {format_form(a)}  ^  {format_form(b)}")
        out.append(f"  ddbar star(conj(product)) = {format_form(res)}")
    return {"formality": r.to_json()}


_NEEDS_STRUCTURE = {
    "check": _cmd_check,
    "cohomology": _cmd_cohomology,
    "harmonic": _cmd_harmonic,
    "metric-check": _cmd_metric_check,
    "obstruct": _cmd_obstruct,
    "massey": _cmd_massey,
    "formal": _cmd_formal,
}


def _cmd_verify(args, out):
    from .massey import certificate_failures

    try:
        text = Path(args.certificate_file).read_text(encoding="utf-8")
        doc = json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {args.certificate_file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.certificate_file}: not JSON ({exc.msg})") from None
    fails = certificate_failures(doc)
    out.append("valid" if not fails else "invalid")
    out.extend(f"  {f}" for f in fails)
    return {"verify": {"file": str(args.certificate_file), "valid": not fails, "failures": fails}}


def _cmd_catalog(args, out):
    if args.action == "list":
        for nm in catalog_names():
            doc = get_entry(nm).doc.strip().splitlines()[0]
            out.append(f"{nm:14s} {doc}")
        return {"catalog": catalog_names()}
    if not args.name:
        raise InputError("catalog show needs an entry name")
    entry = get_entry(args.name)
    params = entry.resolve(parse_params(args.param))
    pres = entry.build(params)
    out.append(entry.doc.rstrip())
    out.append("parameters:")
    for spec in entry.params:
        v = params[spec.name]
        flags = ", ".join(x for x in (spec.domain, "nonzero" if spec.nonzero else "") if x)
        out.append(f"  {spec.name} = {v if isinstance(v, int) else format_scalar(v)}  ({flags})")
    out.append("structure:")
    out.append(format_structure(pres).rstrip())
    return {
        "entry": entry.name,
        "params": {k: (v if isinstance(v, int) else format_scalar(v)) for k, v in sorted(params.items())},
        "structure": format_structure(pres),
    }


# parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("structure")
    src.add_argument("--input", metavar="FILE", help="structure file")
    src.add_argument("--catalog", metavar="NAME", help="built-in entry (see: nilforms catalog list)")
    src.add_argument("--param", action="append", default=[], metavar="K=V", help="catalog parameter(s), comma separated or repeated")
    common.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")

    p = _Parser(prog="nilforms", description="Exact invariant-form computations on nilmanifolds and solvmanifolds.")
    p.add_argument("--version", action="version", version=f"nilforms {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("check", parents=[common], help="validate the structure equations")
    c = sub.add_parser("cohomology", parents=[common], help="cohomology dimension tables")
    c.add_argument("--kind", help="deRham, Dolbeault, BottChern or Aeppli (default: all that apply)")
    h = sub.add_parser("harmonic", parents=[common], help="harmonic bases")
    h.add_argument("--kind", required=True)
    h.add_argument("--bidegree", metavar="P,Q")
    h.add_argument("--metric", help="id, file, diag(h1,...,hn) or 'r11,r12;r21,r22'")
    m = sub.add_parser("metric-check", parents=[common], help="metric conditions")
    m.add_argument("--conditions", default="kahler,balanced,skt", help="comma list: kahler, balanced, skt, astheno, gauduchon, k-gauduchon(k)")
    m.add_argument("--metric")
    o = sub.add_parser("obstruct", parents=[common], help="p-pluriclosed obstruction test")
    o.add_argument("--alpha", required=True, help="form; write --alpha=-e3^~e3 when it starts with '-'")
    o.add_argument("--p", type=int, required=True)
    ms = sub.add_parser("massey", parents=[common], help="triple Aeppli-Bott-Chern-Massey product")
    ms.add_argument("--a", required=True)
    ms.add_argument("--b", required=True)
    ms.add_argument("--c", required=True)
    ms.add_argument("--metric")
    ms.add_argument("--certificate", metavar="PATH", help="also write the certificate JSON here")
    v = sub.add_parser("verify", help="replay a certificate")
    v.add_argument("certificate_file")
    v.add_argument("--json", metavar="PATH")
    f = sub.add_parser("formal", parents=[common], help="geometric Bott-Chern formality of a metric")
    f.add_argument("--metric")
    cat = sub.add_parser("catalog", help="list or show built-in entries")
    cat.add_argument("action", choices=["list", "show"])
    cat.add_argument("name", nargs="?")
    cat.add_argument("--param", action="append", default=[])
    cat.add_argument("--json", metavar="PATH")
    return p


def _write_report(path, doc):
    text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    try:
        if args.command == "verify":
            results = _cmd_verify(args, out)
            echo = {"source": "certificate", "path": str(args.certificate_file)}
        elif args.command == "catalog":
            results = _cmd_catalog(args, out)
            echo = {"source": "catalog"}
        else:
            pres, fm, echo = _load(args)
            echo["structure"] = format_structure(pres, fm)
            results = _NEEDS_STRUCTURE[args.command](args, pres, fm, out)
    except (InputError, ParseError, CatalogError, InvalidPresentation, InvalidMetric, ValueError) as exc:
        print(f"nilforms: error: {exc}", file=sys.stderr)
        return 2
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool": "nilforms",
        "version": __version__,
        "command": args.command,
        "input": echo,
        "results": results,
    }
    if getattr(args, "json", None) != "-":
        print("\n".join(out))
    if getattr(args, "json", None):
        _write_report(args.json, doc)
    if args.command == "verify" and not results["verify"]["valid"]:
        return 1
    return 0


def main(argv=None) -> None:
    raise SystemExit(run_cli(argv))


if __name__ == "__main__":
    main()
