"""Command line surface: catalog browsing, probes, oracle checks, reports.

Subcommands:

  list               families and validity ranges
  probe              full pipeline for one entry: restrict, classify, kernel,
                     third-order probe, witness
  verify-constants   brute-force bracket oracle vs the catalog constants
  report             batch reproduction table over parameter ranges
  custom             ingest a space file, classify its critical points and
                     probe the degenerate ones

Exit codes: 0 success, 1 verification mismatch, 2 usage or range error.
Rationals print as p/q, floats with 17 significant digits, so output is
byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import catalog, lie_constants
from .catalog import CatalogEntry, ParameterRangeError
from .chart import Classification, classify, kernel_basis
from .probe import CurveSpec, Verdict, improving_offset, probe_chart
from .signomial import ExactEvaluationError


def fmt(value) -> "str | None":
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _s3_matches(result_s3, expected, mode: str) -> "bool | None":
    if expected is None:
        return None
    if mode == "exact" and isinstance(expected, Fraction):
        return result_s3 == expected
    a, b = float(result_s3), float(expected)
    return abs(a - b) <= 1e-6 * max(abs(a), abs(b), 1e-300)


def probe_record(
    entry: CatalogEntry,
    mode: str = "auto",
    tol_low: float = 1e-8,
    tol_high: float = 1e-6,
    kernel_tol: float = 1e-9,
    curve: "CurveSpec | None" = None,
) -> dict:
    """Run the full pipeline on one entry and return a plain-dict record."""
    ch = entry.chart
    fpoint = [float(x) for x in entry.critical_point]
    label = classify(ch, fpoint, kernel_tol=kernel_tol)
    kernel = (
        []
        if label is Classification.NOT_CRITICAL
        else kernel_basis(ch, fpoint, kernel_tol=kernel_tol)
    )
    curve = curve or entry.curve()
    result = probe_chart(ch, curve, mode=mode, tol_low=tol_low, tol_high=tol_high)
    witness = None
    witness_value = None
    if result.verdict is Verdict.NOT_LOCAL_MAX:
        witness = improving_offset(ch, curve, result.s3)
        witness_value = ch.reduced.eval_float(witness)
    return {
        "family": entry.family,
        "n": entry.n,
        "reduced": ch.reduced.to_text(),
        "critical_point": [fmt(x) for x in entry.critical_point],
        "classification": str(label),
        "kernel_directions": [[fmt(float(c)) for c in v] for v in kernel],
        "direction": [fmt(c) for c in curve.direction],
        "mode": result.mode,
        "s1": fmt(result.s1),
        "s2": fmt(result.s2),
        "s3": fmt(result.s3),
        "expected_s3": fmt(entry.expected_s3),
        "s3_matches_expected": _s3_matches(result.s3, entry.expected_s3, result.mode),
        "verdict": str(result.verdict),
        "value_at_critical": fmt(ch.reduced.eval_float(fpoint)),
        "witness": None if witness is None else [fmt(x) for x in witness],
        "value_at_witness": fmt(witness_value),
    }


def _print_record(record: dict, out) -> None:
    head = record["family"] if record["n"] is None else f"{record['family']} n={record['n']}"
    print(f"[{head}]", file=out)
    for key in (
        "critical_point",
        "classification",
        "kernel_directions",
        "mode",
        "s1",
        "s2",
        "s3",
        "expected_s3",
        "s3_matches_expected",
        "verdict",
        "witness",
        "value_at_critical",
        "value_at_witness",
    ):
        print(f"  {key}: {record[key]}", file=out)


def _record_ok(record: dict) -> bool:
    if record["verdict"] != str(Verdict.NOT_LOCAL_MAX):
        return False
    return record["s3_matches_expected"] in (True, None)


# -- subcommand implementations ---------------------------------------------------


def cmd_list(args) -> int:
    rows = []
    for family in sorted(catalog.FAMILIES):
        if args.family and family != args.family:
            continue
        info = catalog.FAMILIES[family]
        rng = "fixed size" if info["min_n"] is None else f"n >= {info['min_n']}"
        rows.append((family, rng, info["description"]))
    for family, rng, desc in rows:
        print(f"{family:16s} {rng:12s} {desc}")
    return 0


def cmd_probe(args) -> int:
    try:
        entry = catalog.build(args.family, args.n)
        record = probe_record(
            entry,
            mode=args.mode,
            tol_low=args.tol_low,
            tol_high=args.tol_high,
            kernel_tol=args.kernel_tol,
        )
    except ParameterRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExactEvaluationError as exc:
        print(f"error: exact mode impossible here ({exc}); use --mode float",
              file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        _print_record(record, sys.stdout)
    return 0 if _record_ok(record) else 1


_ALGEBRA_EXPECTED = {
    "su2": {(0, 0, 0): Fraction(3)},
    "su3": {(0, 0, 0): Fraction(2), (0, 1, 1): Fraction(1), (1, 1, 2): Fraction(1)},
}


def cmd_verify_constants(args) -> int:
    if args.algebra == "so8":
        table, partition, pairs = lie_constants.so8_table()
        expected = {}
        for i in range(4):
            for j in range(i + 1, 4):
                for k in range(j + 1, 4):
                    key = tuple(
                        sorted(
                            (pairs.index((i, j)), pairs.index((i, k)), pairs.index((j, k)))
                        )
                    )
                    expected[key] = Fraction(2, 3)
    else:
        if args.algebra == "su2":
            table, partition = lie_constants.su2_abstract_table()
        else:
            table, partition = lie_constants.su_n_table(3)
        expected = _ALGEBRA_EXPECTED[args.algebra]
    computed = lie_constants.structural_constants(
        lie_constants.orthonormalize(table, partition), partition
    )
    dims = lie_constants.summand_dims(partition)
    print(f"algebra {args.algebra}: summand dims {dims}")
    worst = 0.0
    for key in sorted(set(expected) | set(computed)):
        want = float(expected.get(key, 0))
        got = computed.get(key, 0.0)
        dev = abs(got - want)
        worst = max(worst, dev)
        print(f"  [{key[0]}{key[1]}{key[2]}] computed {got:.12f}  expected {want:.12f}  |dev| {dev:.2e}")
    print(f"max deviation: {worst:.3e}")
    if worst > args.tol:
        print(f"FAIL: deviation exceeds {args.tol}", file=sys.stderr)
        return 1
    return 0


def _parse_range(text: str, name: str) -> list[int]:
    if text.strip() == "":
        return []
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{name} must look like A..B, got {text!r}"
        ) from None
    return list(range(lo, hi + 1))


def cmd_report(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in catalog.FAMILIES]
    if unknown:
        print(f"error: unknown families {unknown}", file=sys.stderr)
        return 2
    jobs: list[tuple[str, "int | None"]] = []
    if "e6_su2_so6" in families:
        jobs.append(("e6_su2_so6", None))
    ranges = {
        "su_n": args.range_su,
        "so2n_flag": args.range_flag,
        "su2n_mod_spn": args.range_sp,
    }
    for family, rng in ranges.items():
        if family in families:
            for n in sorted(set(rng)):
                jobs.append((family, n))
    jobs.sort(key=lambda fn: (fn[0], -1 if fn[1] is None else fn[1]))

    def run(job):
        family, n = job
        entry = catalog.build(family, n)
        return probe_record(entry, mode=args.mode)

    try:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            records = list(pool.map(run, jobs))
    except ParameterRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExactEvaluationError as exc:
        print(f"error: exact mode impossible here ({exc}); use --mode auto",
              file=sys.stderr)
        return 2
    payload = json.dumps({"records": records}, indent=2)
    if args.out in (None, "-"):
        print(payload)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        print(f"wrote {len(records)} records to {args.out}")
    return 0 if all(_record_ok(r) for r in records) else 1


def cmd_custom(args) -> int:
    try:
        entry = catalog.load_custom(args.file)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ch = entry.chart
    hinted = not args.search and "critical_point" in _custom_hints(args.file)
    if hinted:
        coords = [tuple(float(x) for x in entry.critical_point)]
    else:
        from .chart import find_critical_points

        points = find_critical_points(ch, kernel_tol=args.kernel_tol)
        if not points:
            print("no critical points found")
            return 0
        coords = [cp.coords for cp in points]
        for cp in points:
            rec = cp.as_record(kernel_tol=args.kernel_tol)
            print(f"critical point {tuple(fmt(x) for x in cp.coords)}: "
                  f"{rec['classification']}, |grad| = {fmt(rec['grad_norm'])}, "
                  f"eigenvalues {[fmt(v) for v in rec['eigenvalues']]}")
    status = 0
    for point in coords:
        label = classify(ch, point, kernel_tol=args.kernel_tol)
        if hinted:
            print(f"critical point {tuple(fmt(x) for x in point)}: {label}")
        if label is not Classification.DEGENERATE:
            continue
        if hinted and entry.kernel_direction is not None:
            directions = [entry.kernel_direction]
        else:
            vecs = kernel_basis(ch, point, kernel_tol=args.kernel_tol)
            directions = [tuple(float(c) for c in v) for v in vecs]
        for direction in directions:
            probe_entry = CatalogEntry(
                family=entry.family,
                n=None,
                space=entry.space,
                chart=ch,
                critical_point=_rationalize(point),
                kernel_direction=_rationalize(direction),
                expected_s3=entry.expected_s3 if hinted else None,
            )
            record = probe_record(probe_entry, mode=args.mode)
            _print_record(record, sys.stdout)
            if not _record_ok(record):
                status = 1
    return status


def _rationalize(values) -> tuple:
    """Turn integer-valued floats into Fractions so probes can go exact."""
    out = []
    for v in values:
        if isinstance(v, float) and v.is_integer():
            out.append(Fraction(int(v)))
        else:
            out.append(v)
    return tuple(out)


def _custom_hints(path) -> set:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return set(data) if isinstance(data, dict) else set()
    except Exception:
        return set()


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homscal",
        description="Scalar curvature probes for homogeneous Einstein metrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="enumerate families and validity ranges")
    p.add_argument("--family", choices=sorted(catalog.FAMILIES), default=None)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("probe", help="run the full pipeline for one entry")
    p.add_argument("--family", choices=sorted(catalog.FAMILIES), required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    p.add_argument("--tol-low", type=float, default=1e-8)
    p.add_argument("--tol-high", type=float, default=1e-6)
    p.add_argument("--kernel-tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("verify-constants", help="bracket oracle vs catalog constants")
    p.add_argument("--algebra", choices=("su2", "su3", "so8"), required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify_constants)

    p = sub.add_parser("report", help="batch reproduction table")
    p.add_argument("--range-su", type=lambda s: _parse_range(s, "--range-su"), default=None)
    p.add_argument("--range-flag", type=lambda s: _parse_range(s, "--range-flag"), default=None)
    p.add_argument("--range-sp", type=lambda s: _parse_range(s, "--range-sp"), default=None)
    p.add_argument(
        "--families",
        default="e6_su2_so6,so2n_flag,su2n_mod_spn,su_n",
        help="comma-separated family subset",
    )
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    p.add_argument("--out", default=None, help="output path, '-' for stdout")
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("custom", help="probe a user-supplied space file")
    p.add_argument("--file", required=True)
    p.add_argument("--search", action="store_true", help="multi-start even when hints exist")
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    p.add_argument("--kernel-tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_custom)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "range_su", "missing") is None and args.command == "report":
        args.range_su = list(range(3, 11))
    if getattr(args, "range_flag", "missing") is None and args.command == "report":
        args.range_flag = list(range(4, 9))
    if getattr(args, "range_sp", "missing") is None and args.command == "report":
        args.range_sp = list(range(3, 7))
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
