"""Command-line front door.

Subcommands: classify, solve, check-examples, dump-roots, dump-constants.
All reports are deterministic UTF-8 JSON (or a plain text table), with
rationals rendered as "p/q" strings.  Exit codes: 0 on success/match,
1 on mismatch or failed check, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import classify as classify_mod
from . import constructions, invform, isotropy
from .chevalley import cached_constants
from .errors import Inconsistent, InvalidRank
from .isotropy import CASE1, CASE2, LOWRANK, PARABOLIC, Distortion
from .rootsys import EXCEPTIONAL_RANK, build, format_vec, minimal_root, parse_vec


def _jsonable(obj):
    """Recursively render Fractions as strings for byte-stable JSON."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {_key(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    return obj


def _key(k):
    if isinstance(k, Fraction):
        return str(k)
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def _emit(payload, stream=None):
    stream = stream or sys.stdout
    json.dump(_jsonable(payload), stream, sort_keys=True, separators=(",", ":"))
    stream.write("\n")


def _verdict_dict(v) -> dict:
    return {
        "label": v.label,
        "rank": v.rank,
        "case": v.case,
        "delta": format_vec(v.delta) if v.delta is not None else None,
        "alpha": format_vec(v.alpha) if v.alpha is not None else None,
        "verdict": "eliminated" if v.eliminated else "survivor",
        "stage": v.stage,
        "witness": _jsonable(v.witness),
        "survivor_label": v.survivor_label,
        "notes": list(v.notes),
        "solution_dimension": v.solution_dimension,
    }


def _survivor_key_dict(key) -> dict:
    label, rank, case, alpha, delta, tag = key
    return {
        "label": label,
        "rank": rank,
        "case": case,
        "alpha": format_vec(alpha) if alpha is not None else None,
        "delta": format_vec(delta) if delta is not None else None,
        "survivor_label": tag,
    }


def _survivor_sort_key(d):
    return (d["label"], d["rank"], d["case"], d["alpha"] or [], d["delta"] or [])


def _classify_report(max_rank: int, cases: str, threads: int):
    if threads > 1 and cases == "all":
        with ThreadPoolExecutor(max_workers=min(threads, 3)) as pool:
            parts = list(
                pool.map(
                    lambda c: classify_mod.classify_all(max_rank, c),
                    ("case1", "case2", "parabolic"),
                )
            )
        report = classify_mod.ClassificationReport(max_rank=max_rank, cases="all")
        for part in parts:
            report.verdicts.extend(part.verdicts)
        report.verdicts.sort(key=lambda v: (v.label, v.rank, v.case, v.alpha or (), v.delta or ()))
        report.survivors = [v for v in report.verdicts if not v.eliminated]
        report.expected = classify_mod.expected_survivors(max_rank, "all")
        report.matches_expected = {
            v.survivor_key() for v in report.survivors
        } == report.expected
        return report
    return classify_mod.classify_all(max_rank, cases)


def _cmd_classify(args) -> int:
    threads = int(os.environ.get("LIE_CONFORMAL_THREADS", "1") or "1")
    try:
        report = _classify_report(args.max_rank, args.case, threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    survivors = sorted(
        (_survivor_key_dict(v.survivor_key()) for v in report.survivors),
        key=_survivor_sort_key,
    )
    if args.expect:
        try:
            with open(args.expect, "r", encoding="utf-8") as fh:
                expected = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read expected survivors: {exc}", file=sys.stderr)
            return 2
        expected = sorted(expected, key=_survivor_sort_key)
        match = expected == survivors
    else:
        match = report.matches_expected
    payload = {
        "max_rank": report.max_rank,
        "cases": report.cases,
        "candidates": [_verdict_dict(v) for v in report.verdicts],
        "survivors": survivors,
        "matches_expected": match,
    }
    if args.format == "json":
        _emit(payload)
    else:
        _print_table(report)
    return 0 if match else 1


def _print_table(report):
    header = f"{'system':8} {'case':10} {'stage':18} {'verdict':10} survivor"
    print(header)
    print("-" * len(header))
    for v in report.verdicts:
        system = f"{v.label}{v.rank}" if v.label not in EXCEPTIONAL_RANK else v.label
        verdict = "eliminated" if v.eliminated else "SURVIVES"
        tag = v.survivor_label or ""
        notes = f" ({', '.join(v.notes)})" if v.notes else ""
        print(f"{system:8} {v.case:10} {v.stage:18} {verdict:10} {tag}{notes}")
    print(f"survivors: {len(report.survivors)}")


def _config_from_json(data):
    label = data["label"]
    rank = int(data["rank"])
    case = data["case"]
    rs = build(label, rank)
    alpha = parse_vec(data["alpha"]) if data.get("alpha") else None
    if case in (PARABOLIC, LOWRANK) and alpha is not None:
        delta = isotropy.parabolic_distortion(rs, alpha)
    elif data.get("delta"):
        dvec = parse_vec(data["delta"])
        delta = Distortion(dvec, as_root=dvec if dvec in rs.root_set else None)
    elif case == CASE2:
        low = minimal_root(rs)
        delta = Distortion(low, as_root=low)
    else:
        raise ValueError("config needs a delta or (for parabolic) an alpha")
    return rs, delta, case


def _cmd_solve(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        rs, delta, case = _config_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, InvalidRank) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        config = isotropy.derive_isotropy(rs, delta, case)
    except Inconsistent as exc:
        _emit({"feasible": False, "dimension": 0, "witness": [], "unknowns": [],
               "inconsistent": str(exc)})
        return 0
    report = isotropy.validate(config)
    if not report.ok:
        _emit({"feasible": False, "dimension": 0, "witness": [], "unknowns": [],
               "inconsistent": report.failures()})
        return 0
    sc = cached_constants(rs.label, rs.rank)
    system = invform.assemble(sc, config)
    solution = invform.solve(system)
    labels = isotropy.quotient_basis(config)
    unknowns = [
        [_label_str(labels[i]), _label_str(labels[j])] for i, j in system.unknowns.pairs
    ]
    _emit(
        {
            "feasible": solution.feasible,
            "dimension": solution.dimension,
            "witness": [format_vec(b) for b in solution.basis],
            "nondegenerate_witness": (
                format_vec(solution.nondegenerate_witness)
                if solution.nondegenerate_witness is not None
                else None
            ),
            "certificate": solution.degeneracy_certificate,
            "unknowns": unknowns,
        }
    )
    return 0


def _label_str(label):
    if label == isotropy.CARTAN_LABEL:
        return isotropy.CARTAN_LABEL
    return ",".join(format_vec(label))


def _cmd_check_examples(args) -> int:
    results = {}
    if args.construction in ("sp", "all"):
        results["sp"] = constructions.check_sp_embedding(args.n, trials=args.trials, seed=args.seed)
    if args.construction in ("sl", "all"):
        results["sl"] = constructions.check_sl_embedding(args.n, trials=args.trials, seed=args.seed)
    if args.construction in ("g2", "all"):
        rs = build("G2", 2)
        delta = isotropy.parabolic_distortion(rs, rs.simples[0])
        config = isotropy.derive_isotropy(rs, delta, PARABOLIC)
        isotropy.validate(config)
        system = invform.assemble(cached_constants("G2", 2), config)
        solution = invform.solve(system)
        align = constructions.align_g2_form(system, solution.nondegenerate_witness)
        relations = constructions.check_g2_relations()
        results["g2"] = {
            "ok": True,
            "form_dimension": solution.dimension,
            "global_scale": align["global_scale"],
            "scalars": {_label_str(k): v for k, v in align["scalars"].items()},
            "relations_checked": relations["relations"],
        }
    ok = all(r.get("ok") for r in results.values())
    _emit({"ok": ok, "results": results})
    return 0 if ok else 1


def _cmd_dump_roots(args) -> int:
    try:
        rs = build(args.label, args.rank)
    except InvalidRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(
        {
            "label": rs.label,
            "rank": rs.rank,
            "simples": [format_vec(s) for s in rs.simples],
            "positives": [format_vec(p) for p in rs.positives],
        }
    )
    return 0


def _cmd_dump_constants(args) -> int:
    try:
        sc = cached_constants(args.label, args.rank)
    except InvalidRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for (a, b), n in sorted(sc.n_table.items()):
        _emit({"alpha": format_vec(a), "beta": format_vec(b), "n": n})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieconformal",
        description="Exact classification of essential conformal homogeneous structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run the exhaustive candidate search")
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--case", choices=("case1", "case2", "parabolic", "all"), default="all")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--expect", default=None, help="path to an expected-survivors JSON file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="solve the invariant-form system for one config")
    p.add_argument("config", help="path to an isotropy config JSON file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check-examples", help="verify the explicit constructions")
    p.add_argument("--construction", choices=("sp", "sl", "g2", "all"), default="all")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check_examples)

    p = sub.add_parser("dump-roots", help="serialize a root system as JSON")
    p.add_argument("label")
    p.add_argument("rank", type=int)
    p.set_defaults(func=_cmd_dump_roots)

    p = sub.add_parser("dump-constants", help="emit the structure-constant table as JSON lines")
    p.add_argument("label")
    p.add_argument("rank", type=int)
    p.set_defaults(func=_cmd_dump_constants)
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    return args.func(args)


def main() -> None:
    sys.exit(run())
