"""Command-line surface: crystal/block-graph generation, canonical basis
elements, shape tables, closed forms, and the verification suites.

Output is deterministic: identical invocations produce identical bytes.
Exit codes: 0 success, 2 usage or invalid parameters, 3 multipartition is
not a crystal vertex, 1 a verification suite recorded a mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .canonical import element_to_json, get_basis
from .closedform import (
    AmbiguousCaseError,
    FamilySpec,
    closed_canonical_family,
    closed_canonical_top,
    closed_canonical_weyl,
    shape_table,
)
from .crystal import (
    NotAVertexError,
    block_reduced,
    block_to_dot,
    block_to_json,
    crystal_to_json,
    generate_crystal,
)
from .fock import FockContext
from .partitions import mp_from_json
from .verify import (
    SUITES,
    conjecture_scan,
    verify_duality,
    verify_path_families,
    verify_structural,
    verify_svelte_step,
    verify_top_row_forms,
    verify_weyl_stability,
)


class UsageError(Exception):
    pass


def _context_from(args) -> FockContext:
    if getattr(args, "a", None) is not None:
        if args.charges:
            raise UsageError("give either --a or --charges, not both")
        return FockContext(2, (0,) * args.a + (1,) * args.a)
    if not args.charges:
        raise UsageError("need --charges or --a")
    try:
        charges = tuple(int(c) for c in args.charges.split(","))
    except ValueError as exc:
        raise UsageError(f"bad charge list {args.charges!r}") from exc
    try:
        return FockContext(args.e, charges)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, args) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc, args) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", args)


def cmd_crystal(args) -> int:
    ctx = _context_from(args)
    g = generate_crystal(ctx, args.max_degree)
    if args.format == "dot":
        _emit(block_to_dot(block_reduced(g)), args)
    else:
        _emit_json(crystal_to_json(g), args)
    return 0


def cmd_block_graph(args) -> int:
    ctx = _context_from(args)
    bg = block_reduced(generate_crystal(ctx, args.max_degree))
    if args.format == "dot":
        _emit(block_to_dot(bg), args)
    else:
        _emit_json(block_to_json(bg), args)
    return 0


def cmd_canonical(args) -> int:
    ctx = _context_from(args)
    try:
        mp = mp_from_json(json.loads(args.mp))
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"bad multipartition literal {args.mp!r}: {exc}") from exc
    if len(mp) != ctx.level:
        raise UsageError(f"multipartition has level {len(mp)}, context has {ctx.level}")
    basis = get_basis(ctx, args.cache_dir)
    elem = basis.element(mp)  # NotAVertexError -> exit 3 in main()
    doc = element_to_json(elem)
    if args.format == "text":
        lines = [
            f"G({args.mp}) defect {doc['defect']} shape {tuple(doc['shape'])}",
        ]
        for t in doc["terms"]:
            coeff = " + ".join(
                (str(c) if e == "0" else (f"v^{e}" if c == 1 else f"{c}*v^{e}"))
                for e, c in t["coefficient"].items()
            )
            lines.append(f"  ({coeff}) * {t['multipartition']}")
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit_json(doc, args)
    return 0


def cmd_shape_table(args) -> int:
    table = shape_table(args.a)
    if args.format == "json":
        _emit_json({"a": args.a, "rows": {str(k): list(v) for k, v in table.items()}}, args)
        return 0
    width = max(len(str(x)) for row in table.values() for x in row)
    lines = [f"shape function rows for a={args.a} (k by ell)"]
    for k, row in table.items():
        lines.append(f"k={k}: " + " ".join(str(x).rjust(width) for x in row))
    _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_closed_form(args) -> int:
    if args.family == "top-row":
        elem = closed_canonical_top(args.a, args.i, args.k)
    elif args.family == "weyl":
        elem = closed_canonical_weyl(args.a, args.i, args.k, args.n)
    else:
        spec = FamilySpec(args.family, args.a, args.k, args.n, args.dual)
        try:
            elem = closed_canonical_family(spec, rule=args.rule)
        except AmbiguousCaseError as exc:
            raise UsageError(str(exc)) from exc
    _emit_json(element_to_json(elem), args)
    return 0


def _run_suite(args):
    suite = args.suite
    if suite == "top-row":
        return verify_top_row_forms(args.a, args.i, args.k)
    if suite == "weyl":
        return verify_weyl_stability(args.a, args.i, args.k, args.n, args.max_degree or 13)
    if suite == "families":
        return verify_path_families(args.a, args.family, args.k, args.n, args.max_degree)
    if suite == "duality":
        return verify_duality(_context_from(args), args.max_degree or 8)
    if suite == "svelte":
        return verify_svelte_step(_context_from(args), args.max_degree or 13)
    if suite == "structural":
        return verify_structural(args.a, args.max_degree or 9)
    if suite == "conjecture":
        return conjecture_scan(args.a, args.max_degree or 13)
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    report = _run_suite(args)
    if args.format == "json":
        _emit_json(report.to_json(), args)
    else:
        _emit(report.to_text(), args)
    if args.suite == "conjecture":
        return 0  # informational scan never fails
    return 0 if report.passed else 1


def cmd_conjecture_scan(args) -> int:
    report = conjecture_scan(args.a, args.max_degree)
    if args.format == "json":
        _emit_json(report.to_json(), args)
    else:
        _emit(report.to_text(), args)
    return 0


def _add_context_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--e", type=int, default=2, help="rank (default 2)")
    p.add_argument("--charges", type=str, default=None, help="comma-separated charges")
    p.add_argument("--a", type=int, default=None, help="symmetric shortcut: charges 0^a 1^a")


def _add_common(p: argparse.ArgumentParser, formats=("json", "text")) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", type=str, default=None, help="write output to a file")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker cap (results are identical regardless)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kcb",
        description="Crystal graphs and canonical bases for higher-level "
        "Fock spaces (rank-2 friendly, exact arithmetic).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crystal", help="generate the crystal graph")
    _add_context_opts(p)
    p.add_argument("--max-degree", type=int, required=True)
    _add_common(p, ("json", "dot"))
    p.set_defaults(fn=cmd_crystal)

    p = sub.add_parser("block-graph", help="generate the block-reduced graph")
    _add_context_opts(p)
    p.add_argument("--max-degree", type=int, required=True)
    _add_common(p, ("json", "dot"))
    p.set_defaults(fn=cmd_block_graph)

    p = sub.add_parser("canonical", help="canonical basis element of a multipartition")
    _add_context_opts(p)
    p.add_argument("--mp", type=str, required=True,
                   help='multipartition literal, e.g. "[[3],[]]"')
    p.add_argument("--cache-dir", type=str, default=os.environ.get("KCB_CACHE_DIR"))
    _add_common(p)
    p.set_defaults(fn=cmd_canonical)

    p = sub.add_parser("shape-table", help="shape-function table for a symmetric weight")
    p.add_argument("--a", type=int, required=True)
    _add_common(p, ("text", "json"))
    p.set_defaults(fn=cmd_shape_table)

    p = sub.add_parser("closed-form", help="closed-form canonical element")
    p.add_argument("--family", required=True,
                   choices=("top-row", "weyl", "p0k1", "p10k", "p010k"))
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--i", type=int, default=0, choices=(0, 1))
    p.add_argument("--dual", action="store_true")
    p.add_argument("--rule", choices=("plain", "corrected"), default="corrected")
    _add_common(p)
    p.set_defaults(fn=cmd_closed_form)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    _add_context_opts(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--i", type=int, default=0, choices=(0, 1))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--family", choices=("p0k1", "p10k", "p010k"), default="p0k1")
    p.add_argument("--max-degree", type=int, default=None)
    _add_common(p, ("text", "json"))
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("conjecture-scan", help="exploratory stabilized-path scan")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=13)
    _add_common(p)
    p.set_defaults(fn=cmd_conjecture_scan)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"kcb: {exc}", file=sys.stderr)
        return 2
    except NotAVertexError as exc:
        print(f"kcb: not a crystal vertex: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"kcb: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
