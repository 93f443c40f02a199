"""Batch command-line front end.

Subcommands: ``validate`` (consistency of a collection file), ``perf``
(rank collections under a capacity), ``incompat`` (per-axiom allocation),
``simulate`` (estimate or enumerate a collection for a voting rule), and
``compare`` (robust family comparison).  Everything is file-in/file-out and
deterministic given flags and seeds.

Exit codes: 0 success/feasible, 1 infeasible input, 2 parse or usage error,
3 enumeration size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .capacities import capacity_from_json
from .collections import (
    Collection,
    FeasibilityReport,
    collection_from_json,
    collection_to_json,
    frechet_check,
    is_member,
)
from .errors import (
    AlignmentError,
    AxiometerError,
    InfeasibleCollectionError,
    ParseError,
    SizeError,
)
from .incompatibility import banzhaf, shapley
from .performance import MEASURE_TAGS, evaluate, rank
from .robustness import (
    CRITERION_TAGS,
    alpha_maxmin_score,
    compare_max_and_min,
    compare_min_vs_max,
    compare_pointwise,
    family_from_json,
)
from .simulation import (
    EstimatedCollection,
    estimated_to_json,
    experiment_from_json,
    run_experiment,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_SIZE = 3


def _presentation_masks(axioms):
    """Non-empty masks ordered by subset size, then bit pattern."""
    from .lattice import popcounts

    cards = popcounts(axioms.size)
    return sorted(axioms.nonempty_masks(), key=lambda m: (int(cards[m]), m))


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _emit(args, payload, table: str) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = table if table.endswith("\n") else table + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _report_payload(report: FeasibilityReport, collection: Collection) -> dict:
    axioms = collection.axioms
    return {
        "feasible": report.feasible,
        "checks": report.checks,
        "tolerance": report.tolerance,
        "negative_contributions": [
            {"subset": axioms.subset_key(mask), "value": value}
            for mask, value in report.negative_contributions
        ],
        "frechet_violations": [
            {
                "subset": axioms.subset_key(v.subset),
                "kind": v.kind,
                "axiom": v.axiom,
                "slack": v.slack,
            }
            for v in report.frechet_violations
        ],
    }


def _report_table(report: FeasibilityReport, axioms) -> str:
    lines = [
        f"feasible: {'yes' if report.feasible else 'no'}",
        f"tolerance: {report.tolerance:g}",
    ]
    if report.negative_contributions:
        lines.append("negative contributions:")
        for mask, value in report.negative_contributions:
            lines.append(f"  {{{axioms.subset_key(mask)}}}  {value:.6f}")
    if report.frechet_violations:
        lines.append("frechet violations:")
        for v in report.frechet_violations:
            lines.append(
                f"  {{{axioms.subset_key(v.subset)}}}  {v.kind} via {v.axiom}"
                f"  slack {v.slack:.6f}"
            )
    return "\n".join(lines)


def _emit_infeasible(exc: InfeasibleCollectionError, axioms) -> None:
    sys.stderr.write(f"error: {exc}\n")
    if exc.report is not None:
        sys.stderr.write(_report_table(exc.report, axioms) + "\n")


def cmd_validate(args) -> int:
    collection = collection_from_json(_load_json(args.collection))
    member = is_member(collection, args.tol)
    bounds = frechet_check(collection, args.tol)
    report = FeasibilityReport(
        feasible=member.feasible,
        checks="full",
        tolerance=args.tol,
        frechet_violations=bounds.frechet_violations,
        negative_contributions=member.negative_contributions,
    )
    _emit(
        args,
        _report_payload(report, collection),
        _report_table(report, collection.axioms),
    )
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_perf(args) -> int:
    cap = capacity_from_json(_load_json(args.capacity))
    names = [Path(p).stem for p in args.collections]
    if len(set(names)) != len(names):
        names = list(args.collections)
    entries = [
        (name, collection_from_json(_load_json(path)))
        for name, path in zip(names, args.collections)
    ]
    try:
        ranked = rank(entries, cap, args.measure, args.tol)
        weights = {
            name: evaluate(cap, c, args.measure, args.tol) for name, c in entries
        }
    except InfeasibleCollectionError as exc:
        _emit_infeasible(exc, cap.axioms)
        return EXIT_INFEASIBLE
    axioms = cap.axioms
    payload = {
        "measure": args.measure,
        "ranking": [
            {
                "rank": e.rank,
                "name": e.name,
                "value": e.value,
                "weights": {
                    axioms.subset_key(m): float(weights[e.name].weights[m])
                    for m in axioms.nonempty_masks()
                },
            }
            for e in ranked
        ],
    }
    name_width = max(len("name"), *(len(e.name) for e in ranked))
    lines = [f"measure: {args.measure}", f"rank  {'name':<{name_width}}  value"]
    for e in ranked:
        lines.append(f"{e.rank:<4}  {e.name:<{name_width}}  {e.value:.6f}")
    lines.append("")
    key_width = max(len(axioms.subset_key(m)) for m in axioms.nonempty_masks()) + 2
    for e in ranked:
        lines.append(f"weights[{e.name}]:")
        for m in _presentation_masks(axioms):
            key = "{" + axioms.subset_key(m) + "}"
            lines.append(f"  {key:<{key_width}}  {weights[e.name].weights[m]:.6f}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_incompat(args) -> int:
    collection = collection_from_json(_load_json(args.collection))
    try:
        if args.method == "shapley":
            alloc = shapley(collection, args.tol)
        else:
            alloc = banzhaf(collection)
    except InfeasibleCollectionError as exc:
        _emit_infeasible(exc, collection.axioms)
        return EXIT_INFEASIBLE
    overall = 1.0 - float(collection.p[collection.axioms.full_mask])
    payload = {
        "method": alloc.method,
        "values": alloc.by_axiom(),
        "total": alloc.total,
        "overall_incompatibility": overall,
    }
    width = max(len("total"), *(len(lab) for lab in collection.axioms.labels))
    lines = [f"method: {alloc.method}", f"{'axiom':<{width}}  value"]
    for label, value in alloc.by_axiom().items():
        lines.append(f"{label:<{width}}  {value:.6f}")
    lines.append(f"{'total':<{width}}  {alloc.total:.6f}")
    if args.method == "shapley":
        lines.append(f"overall incompatibility (1 - p[all]): {overall:.6f}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = experiment_from_json(_load_json(args.experiment))
    result = run_experiment(spec, exact=args.exact, seed_override=args.seed)
    if isinstance(result, EstimatedCollection):
        payload = estimated_to_json(result)
        collection = result.collection
    else:
        payload = collection_to_json(result)
        collection = result
    axioms = collection.axioms
    lines = ["subset  p" + ("  stderr" if isinstance(result, EstimatedCollection) else "")]
    for m in _presentation_masks(axioms):
        row = f"{{{axioms.subset_key(m)}}}  {collection.p[m]:.6f}"
        if isinstance(result, EstimatedCollection):
            row += f"  {result.stderr[m]:.6f}"
        lines.append(row)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_compare(args) -> int:
    cap = capacity_from_json(_load_json(args.capacity))
    fam_f = family_from_json(_load_json(args.family_f))
    fam_g = family_from_json(_load_json(args.family_g))
    if args.criterion == "alpha_maxmin":
        score_f = alpha_maxmin_score(cap, fam_f, args.alpha, args.measure, args.tol)
        score_g = alpha_maxmin_score(cap, fam_g, args.alpha, args.measure, args.tol)
        if abs(score_f - score_g) <= args.tol:
            verdict = "equivalent"
        else:
            verdict = "better" if score_f > score_g else "worse"
        payload = {
            "criterion": "alpha_maxmin",
            "alpha": args.alpha,
            "verdict": verdict,
            "score_f": score_f,
            "score_g": score_g,
        }
        table = (
            f"criterion: alpha_maxmin (alpha={args.alpha:g})\n"
            f"verdict: {verdict}\n"
            f"score F: {score_f:.6f}\nscore G: {score_g:.6f}"
        )
        _emit(args, payload, table)
        return EXIT_OK
    compare = {
        "max_and_min": compare_max_and_min,
        "pointwise": compare_pointwise,
        "min_vs_max": compare_min_vs_max,
    }[args.criterion]
    result = compare(cap, fam_f, fam_g, args.measure, args.tol)
    payload = {
        "criterion": result.criterion,
        "verdict": result.verdict,
        "values_f": dict(zip(fam_f.model_names, result.values_f)),
        "values_g": dict(zip(fam_g.model_names, result.values_g)),
    }
    lines = [f"criterion: {result.criterion}", f"verdict: {result.verdict}"]
    lines.append("values F: " + "  ".join(f"{v:.6f}" for v in result.values_f))
    lines.append("values G: " + "  ".join(f"{v:.6f}" for v in result.values_g))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _add_common(parser, default_format="table"):
    parser.add_argument("--tol", type=float, default=1e-9, help="feasibility tolerance")
    parser.add_argument("--format", choices=("json", "table"), default=default_format)
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--seed", type=int, default=None, help="override the experiment seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axiometer",
        description="Quantitative analysis of axiom satisfaction collections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a collection file for consistency")
    p.add_argument("collection")
    _add_common(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("perf", help="rank collections under a capacity")
    p.add_argument("capacity")
    p.add_argument("collections", nargs="+")
    p.add_argument("--measure", choices=MEASURE_TAGS, default="moebius")
    _add_common(p)
    p.set_defaults(handler=cmd_perf)

    p = sub.add_parser("incompat", help="allocate incompatibility across axioms")
    p.add_argument("collection")
    p.add_argument("--method", choices=("shapley", "banzhaf"), default="shapley")
    _add_common(p)
    p.set_defaults(handler=cmd_incompat)

    p = sub.add_parser("simulate", help="estimate a collection for a voting rule")
    p.add_argument("experiment")
    p.add_argument("--exact", action="store_true", help="enumerate instead of sampling")
    _add_common(p, default_format="json")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("compare", help="compare two families of collections")
    p.add_argument("capacity")
    p.add_argument("family_f")
    p.add_argument("family_g")
    p.add_argument("--criterion", choices=CRITERION_TAGS, default="max_and_min")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--measure", choices=MEASURE_TAGS, default="moebius")
    _add_common(p)
    p.set_defaults(handler=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SizeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SIZE
    except InfeasibleCollectionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INFEASIBLE
    except (ParseError, AlignmentError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except AxiometerError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
