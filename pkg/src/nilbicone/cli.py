"""Command-line front end.

Examples
--------
::

    nilbicone report all --json out.json
    nilbicone report dimensions --algebra sl3 --field p:65521
    nilbicone dim --algebra sl2 --variety NilpotentBicone
    nilbicone jets --algebra sl2 --order 3
    nilbicone components A1 A2 A3 A4 A5
    nilbicone export --algebra sl3 --variety NilpotentBicone -o n_sl3.txt
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dimension import Budget, dimension_report, parse_field
from .invariants import polarized_family
from .jets import build_jet_ideal, check_mustata_dimension
from .report import BUDGET_EXCEEDED, dumps, exit_code
from .suites import ALGEBRAS, SUITES, components, parse_algebras, run_suite
from .varieties import Kind, build_variety

DEFAULT_SEED = 20240601


def _budget(args) -> Budget:
    return Budget(spairs=args.budget_spairs, seconds=args.budget_secs)


def _field(args):
    return None if args.field is None else parse_field(args.field)


def _emit(reports, args) -> int:
    for r in sorted(reports, key=lambda r: r.claim_id):
        extra = ""
        if r.status == BUDGET_EXCEEDED:
            extra = "  (budget exceeded; partial result)"
        print(f"{r.status.upper():16s} {r.claim_id:45s} computed={r.computed!s:12.40s} "
              f"expected={r.expected!s:.40s}{extra}")
    if args.json:
        Path(args.json).write_text(dumps(reports, timings=not args.no_timings) + "\n")
    return exit_code(reports)


def export_ideal(spec_or_ideal, path: str | None) -> str:
    """Write an ideal in the polyring text format; returns the text."""
    ideal = getattr(spec_or_ideal, "ideal", spec_or_ideal)
    text = ideal.to_text()
    if path and path != "-":
        Path(path).write_text(text)
    return text


def _variety(args):
    return build_variety(Kind(args.variety), polarized_family(ALGEBRAS[args.algebra]))


def cmd_report(args) -> int:
    algebras = parse_algebras(args.algebra) if args.algebra else None
    reports = run_suite(args.suite, algebras, args.seed, _field(args), _budget(args))
    return _emit(reports, args)


def cmd_dim(args) -> int:
    spec = _variety(args)
    res = dimension_report(spec, _field(args), _budget(args))
    return _emit([res.to_report(f"dim-{spec.kind.value}-{spec.algebra.name}")], args)


def cmd_jets(args) -> int:
    spec = _variety(args)
    jet = build_jet_ideal(spec, args.order)
    return _emit([check_mustata_dimension(jet, _field(args), _budget(args))], args)


def cmd_components(args) -> int:
    return _emit(components(args.types or None), args)


def cmd_export(args) -> int:
    spec = _variety(args)
    if args.order is not None:
        spec = build_jet_ideal(spec, args.order)
    text = export_ideal(spec, args.output)
    if not args.output or args.output == "-":
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--field", default=None, help="q or p:<prime> (default depends on the check)")
    common.add_argument("--budget-secs", type=float, default=60.0)
    common.add_argument("--budget-spairs", type=int, default=10**6)
    common.add_argument("--json", default=None, metavar="PATH", help="write the JSON report here")
    common.add_argument("--no-timings", action="store_true", help="zero elapsed_ms in the JSON report")

    parser = argparse.ArgumentParser(prog="nilbicone", description="Exact checks on nilpotent bicones of sl_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("report", "run"):
        p = sub.add_parser(name, parents=[common], help="run a named verification suite")
        p.add_argument("suite", choices=sorted(SUITES) + ["all"])
        p.add_argument("--algebra", default=None, help="comma-separated subset of sl2,sl3,sl4")
        p.set_defaults(func=cmd_report)

    kinds = [k.value for k in Kind]
    p = sub.add_parser("dim", parents=[common], help="Krull dimension of one variety ideal")
    p.add_argument("--algebra", choices=sorted(ALGEBRAS), default="sl2")
    p.add_argument("--variety", choices=kinds, default=Kind.NILPOTENT_BICONE.value)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("jets", parents=[common], help="dimension of a jet scheme of a cone")
    p.add_argument("--algebra", choices=sorted(ALGEBRAS), default="sl2")
    p.add_argument("--variety", choices=[Kind.NILPOTENT_CONE.value, Kind.PRINCIPAL_CONE.value],
                   default=Kind.NILPOTENT_CONE.value)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("components", parents=[common], help="component-count lower bounds")
    p.add_argument("types", nargs="*", help="root data such as A3 or D4 (default A1..A5)")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("export", parents=[common], help="write an ideal in text form")
    p.add_argument("--algebra", choices=sorted(ALGEBRAS), default="sl2")
    p.add_argument("--variety", choices=kinds, default=Kind.NILPOTENT_BICONE.value)
    p.add_argument("--order", type=int, default=None, help="export the jet ideal of this order (cones)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.exit(2, f"nilbicone: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
