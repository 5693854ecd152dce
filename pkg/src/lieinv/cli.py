"""Command-line front end: algebra files in, tables or JSON out.

One command per invocation; --format picks the rendering (table for
humans, json for machines -- both carry the same data).  Output is
byte-deterministic: exceptional points print in the canonical order
(exact points by the scalar total order, then branches by modulus
degree and coefficients), catalog rows in catalog order.

Exit codes: 0 success, 1 invalid algebra (the violation witness is
printed), 2 parse error (files, literals, flags), 3 constraint
violation (excluded parameters, unknown labels, out-of-scope inputs),
4 fixture mismatch under catalog show --check-fixtures.

LIEINV_THREADS is accepted and validated; the elimination engine is
single-threaded, so today the variable never changes results or speed.
"""

import argparse
import json
import os
import sys

from . import catalog
from .catalog import CatalogError
from .classify import ClassifyError, classify3, identify4
from .cocycle import KappaSpec, build_der, build_general
from .contract import contraction_graph3d, criteria_report
from .exactmath import ParseError, format_poly, format_scalar, parse_poly, parse_scalar
from .invariant import StepFunction, phi, phi0, psi, signature
from .liealg import AlgebraError, parse_algebra, serialize, validate
from .paramlinalg import bareiss_generic_rank, kernel_profile

__all__ = ["main"]

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_CONSTRAINT = 3
EXIT_FIXTURE = 4

_FAMILIES = {"psi": psi, "phi": phi, "phi0": phi0}


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


def _worker_count():
    raw = os.environ.get("LIEINV_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise _Fail(EXIT_PARSE, "LIEINV_THREADS must be an integer, got %r" % raw)
    if n < 1:
        raise _Fail(EXIT_PARSE, "LIEINV_THREADS must be positive, got %d" % n)
    return n


def _emit(args, doc, lines):
    if args.format == "json":
        print(json.dumps(doc, separators=(",", ":"), ensure_ascii=False))
    else:
        print("\n".join(lines))


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _Fail(EXIT_PARSE, "cannot read %s: %s" % (path, e))


def _load(path):
    lie = parse_algebra(_read(path))
    report = validate(lie)
    if not report.ok:
        raise _Fail(EXIT_INVALID, "%s: %s" % (path, report.message()))
    return lie


def _step_doc(f):
    entries = []
    for br, v in f.exceptional:
        if br.degree == 1:
            entries.append({"point": format_scalar(br.point()), "value": v})
        else:
            entries.append(
                {"modulus": format_poly(br.modulus), "degree": br.degree, "value": v}
            )
    return {"generic": f.generic, "exceptional": entries}


def _step_lines(f, prefix=""):
    lines = ["%sgeneric %d" % (prefix, f.generic)]
    for br, v in f.exceptional:
        lines.append("%s%-32s %d" % (prefix, br, v))
    return lines


def _parse_kappa(text):
    try:
        rows = [
            [parse_poly(entry, var="x") for entry in row.split(",")]
            for row in text.split(";")
        ]
        return KappaSpec(rows)
    except (ParseError, ValueError) as e:
        raise _Fail(EXIT_PARSE, "bad twist matrix %r: %s" % (text, e))


def _parse_param_list(text):
    if not text:
        return None
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise _Fail(EXIT_PARSE, "--params entries look like name=value, got %r" % part)
        name, value = part.split("=", 1)
        out[name.strip()] = value.strip()
    return out


# -- commands -----------------------------------------------------------------


def _cmd_validate(args):
    lie = parse_algebra(_read(args.file))
    report = validate(lie)
    if report.ok:
        doc = {"ok": True, "name": lie.name, "dim": lie.dim}
        lines = ["ok %s dim %d" % (lie.name or "(unnamed)", lie.dim)]
        _emit(args, doc, lines)
        return EXIT_OK
    doc = {"ok": False, "witness": report.message()}
    _emit(args, doc, ["invalid: %s" % report.message()])
    return EXIT_INVALID


def _cmd_invariant(args):
    f = _FAMILIES[args.family](_load(args.file))
    _emit(args, _step_doc(f), _step_lines(f))
    return EXIT_OK


def _cmd_signature(args):
    f = _FAMILIES[args.family](_load(args.file))
    sig = str(signature(f))
    _emit(args, {"family": args.family, "signature": sig}, [sig])
    return EXIT_OK


def _cmd_cocycle_dim(args):
    lie = _load(args.file)
    kappa = _parse_kappa(args.kappa)
    if kappa.q != args.q:
        raise _Fail(
            EXIT_PARSE,
            "--q %d disagrees with the %dx%d twist matrix"
            % (args.q, kappa.q + 1, kappa.q + 1),
        )
    m = build_general(lie, kappa)
    f = StepFunction.from_profile("cocycle", lie, m, kernel_profile(m))
    _emit(args, _step_doc(f), _step_lines(f))
    return EXIT_OK


def _cmd_der_dim(args):
    lie = _load(args.file)
    parts = args.abg.split(",")
    if len(parts) != 3:
        raise _Fail(EXIT_PARSE, '--abg needs three comma-separated literals, e.g. "1,1,1"')
    a, b, g = (parse_scalar(p.strip(), lie.tower) for p in parts)
    m = build_der(lie, a, b, g)
    dim = m.cols - bareiss_generic_rank(m)[0]
    _emit(args, {"dim": dim}, ["dim %d" % dim])
    return EXIT_OK


def _ident_output(args, ident):
    lines = [ident.name()]
    lines += ["%s %s" % (fam, sig) for fam, sig in ident.evidence.items()]
    _emit(args, ident.to_jsonable(), lines)
    return EXIT_OK


def _cmd_identify4(args):
    return _ident_output(args, identify4(_load(args.file)))


def _cmd_classify3(args):
    return _ident_output(args, classify3(_load(args.file), method=args.method))


def _crit_line(c):
    line = "%-3s %s  %s" % (c.name, "pass" if c.passed else "FAIL", c.test)
    if c.value is not None:
        at = "" if c.witness is None else "at %s: " % c.witness
        line += "  [%s%d vs %d]" % (at, c.value, c.value0)
    return line


def _cmd_contract(args):
    lie, lie0 = _load(args.file), _load(args.file0)
    kappas = [_parse_kappa(text) for text in args.extra_kappa]
    report = criteria_report(lie, lie0, extra_kappas=kappas)
    lines = ["%s -> %s" % (report.name, report.name0)]
    lines += [_crit_line(c) for c in report.criteria]
    lines.append("verdict: %s" % report.verdict)
    _emit(args, report.to_jsonable(), lines)
    return EXIT_OK


def _cmd_contract_graph3d(args):
    nodes, edges = contraction_graph3d()
    doc = {"nodes": nodes, "edges": [[a, b] for a, b in edges]}
    lines = ["nodes: %s" % " ".join(nodes)]
    lines += ["%s -> %s" % e for e in edges]
    _emit(args, doc, lines)
    return EXIT_OK


def _cmd_catalog_list(args):
    entries = catalog.list_entries(args.dim)
    if args.dim is not None and not entries:
        raise _Fail(EXIT_CONSTRAINT, "no catalog entries of dimension %d" % args.dim)
    doc = []
    lines = []
    for e in entries:
        doc.append(
            {
                "name": e.name,
                "label": e.label,
                "dim": e.dim,
                "params": list(e.params),
                "constraint": e.constraint,
            }
        )
        line = "%-32s dim %d" % (e.name, e.dim)
        if e.params:
            line += "  free %s" % ",".join(e.params)
        if e.constraint:
            line += "  (%s)" % e.constraint
        lines.append(line)
    _emit(args, doc, lines)
    return EXIT_OK


def _bracket_lines(algdoc):
    lines = []
    brackets = algdoc.get("brackets", {})
    for key in sorted(brackets, key=lambda k: tuple(int(p) for p in k.split(","))):
        i, j = key.split(",")
        vec = brackets[key]
        terms = []
        for k in sorted(vec, key=int):
            lit = str(vec[k])
            terms.append("e%s" % k if lit == "1" else "(%s)*e%s" % (lit, k))
        lines.append("[e%s,e%s] = %s" % (i, j, " + ".join(terms)))
    return lines


def _cmd_catalog_show(args):
    params = _parse_param_list(args.params)
    lie = catalog.instantiate(args.label, params)
    algdoc = json.loads(serialize(lie))
    doc = {"algebra": algdoc, "tables": {}}
    lines = ["name %s" % lie.name, "dim %d" % lie.dim]
    if not lie.tower.is_base():
        lines.append(
            "extension %s: %s" % (lie.tower.generator, lie.tower.minpoly_text())
        )
    lines += _bracket_lines(algdoc)
    families = (args.family,) if args.family else ("psi", "phi", "phi0")
    mismatch = False
    if args.check_fixtures:
        doc["check"] = {}
    for fam in families:
        try:
            fixture = catalog.expected_table(args.label, params, fam)
        except CatalogError:
            if args.family:
                raise
            continue  # entries without a printed table for this family
        doc["tables"][fam] = _step_doc(fixture)
        lines.append("%s:" % fam)
        lines += _step_lines(fixture, prefix="  ")
        if args.check_fixtures:
            from .invariant import step_equal

            ok = step_equal(_FAMILIES[fam](lie), fixture)
            doc["check"][fam] = "ok" if ok else "mismatch"
            lines.append("%s check %s" % (fam, "ok" if ok else "MISMATCH"))
            mismatch = mismatch or not ok
    _emit(args, doc, lines)
    return EXIT_FIXTURE if mismatch else EXIT_OK


# -- argument plumbing --------------------------------------------------------


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("table", "json"), default="table", help="output rendering"
    )
    ap = argparse.ArgumentParser(
        prog="lieinv",
        description="Twisted-cocycle invariants of finite-dimensional Lie algebras.",
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", parents=[common], help="check a bracket table")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("invariant", parents=[common], help="one invariant step function")
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_invariant)

    p = sub.add_parser("signature", parents=[common], help="occurrence signature")
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_signature)

    p = sub.add_parser(
        "cocycle-dim", parents=[common], help="twisted q-cocycle dimensions"
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument(
        "--kappa",
        required=True,
        help='symmetric twist matrix, rows ";"-separated: "1,x;x,1"',
    )
    p.add_argument("file")
    p.set_defaults(handler=_cmd_cocycle_dim)

    p = sub.add_parser("der-dim", parents=[common], help="(a,b,g)-derivation dimension")
    p.add_argument("--abg", required=True, help='three literals: "1,1,1"')
    p.add_argument("file")
    p.set_defaults(handler=_cmd_der_dim)

    p = sub.add_parser("identify4", parents=[common], help="match a 4D algebra")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_identify4)

    p = sub.add_parser("classify3", parents=[common], help="match a 3D algebra")
    p.add_argument("--method", choices=("psi", "phi0"), default="psi")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_classify3)

    p = sub.add_parser("contract", parents=[common], help="contraction criteria L -> L0")
    p.add_argument("file")
    p.add_argument("file0")
    p.add_argument(
        "--extra-kappa",
        action="append",
        default=[],
        help="constant twist matrix for an extra cocycle comparison (repeatable)",
    )
    p.set_defaults(handler=_cmd_contract)

    p = sub.add_parser(
        "contract-graph3d", parents=[common], help="3D proper-contraction graph"
    )
    p.set_defaults(handler=_cmd_contract_graph3d)

    pc = sub.add_parser("catalog", help="catalog queries")
    csub = pc.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    p = csub.add_parser("list", parents=[common], help="list catalog entries")
    p.add_argument("--dim", type=int)
    p.set_defaults(handler=_cmd_catalog_list)

    p = csub.add_parser("show", parents=[common], help="brackets and tables of one row")
    p.add_argument("label")
    p.add_argument("--params", help='exact values: "a=2,b=3"')
    p.add_argument("--family", choices=sorted(_FAMILIES))
    p.add_argument("--check-fixtures", action="store_true")
    p.set_defaults(handler=_cmd_catalog_show)

    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        _worker_count()
        return args.handler(args)
    except _Fail as e:
        print("error: %s" % e.message, file=sys.stderr)
        return e.code
    except (AlgebraError, ParseError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    except (CatalogError, ClassifyError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONSTRAINT
    except NotImplementedError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONSTRAINT
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONSTRAINT


if __name__ == "__main__":
    raise SystemExit(main())
