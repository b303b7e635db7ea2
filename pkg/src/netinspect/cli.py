"""Command-line front end.

Exit codes: 0 ok, 2 validation, 3 size cap, 4 solver numeric, 5 infeasible mode.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time

from . import io
from .disjoint import disjoint_equilibrium
from .errors import InspectionError, ValidationError
from .exact import (DEFAULT_CELL_CAP, best_pure_inspection, solve_column_generation, solve_exact,
                    verify_equilibrium)
from .game import attack_marginals, payoff, undetection_marginals
from .generate import generate_instance, parse_overlap
from .heuristic import optimality_gap, solve_heuristic, worst_case_evaluation

GAP_CURVE_FIELDS = [
    "b1", "exact_value", "heuristic_worst_case", "relative_gap", "heuristic_seconds", "exact_seconds",
    "cover_seconds", "cover_size", "cover_optimal", "exact_columns",
]


def parse_range(text: str) -> list[int]:
    """``"1..4"`` (inclusive) or ``"1,2,5"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"cannot parse range {text!r}", code="bad-argument") from None


def stepped_accuracies(b1: int, step: float) -> list[float]:
    return [round(1.0 - step * k, 12) for k in range(b1)]


def _certificate_dict(cert) -> dict:
    return {"defender_gap": cert.defender_gap, "attacker_gap": cert.attacker_gap, "tol": cert.tol,
            "partial": cert.partial, "certified": cert.certified}


def _emit(doc) -> None:
    sys.stdout.write(io.dumps(doc))


def _write_pair(prefix: str | None, instance, sigma1, sigma2=None) -> None:
    if not prefix:
        return
    with open(f"{prefix}.defender.json", "w") as fh:
        fh.write(io.serialize_strategy(instance, sigma1, "defender"))
    if sigma2 is not None:
        with open(f"{prefix}.attacker.json", "w") as fh:
            fh.write(io.serialize_strategy(instance, sigma2, "attacker"))


def cmd_solve(args) -> int:
    instance = io.parse_instance(args.instance)
    if args.mode == "exact":
        if args.method == "matrix":
            res = solve_exact(instance, cap=args.cap)
        else:
            res = solve_column_generation(instance, pricing_mode=args.pricing, time_budget=args.time_budget)
        _write_pair(args.out_prefix, instance, res.inspection, res.attack)
        info = {k: v for k, v in res.info.items() if isinstance(v, (int, float, bool, dict))}
        _emit({"mode": "exact", "method": args.method, "value": res.value,
               "certificate": _certificate_dict(res.certificate), "info": info,
               "defender": io.strategy_to_dict(instance, res.inspection, "defender"),
               "attacker": io.strategy_to_dict(instance, res.attack, "attacker")})
    elif args.mode == "disjoint":
        sigma1, sigma2, value, profile = disjoint_equilibrium(instance)
        _write_pair(args.out_prefix, instance, sigma1, sigma2)
        _emit({"mode": "disjoint", "value": value, "k_star": profile.k_star,
               "ordered_nodes": [instance.nodes[v] for v in profile.ordered_nodes],
               "sizes": list(profile.sizes), "uniform_mass": str(profile.uniform_mass),
               "defender": io.strategy_to_dict(instance, sigma1, "defender"),
               "attacker": io.strategy_to_dict(instance, sigma2, "attacker")})
    else:
        out = solve_heuristic(instance, time_budget=args.time_budget)
        _write_pair(args.out_prefix, instance, out.strategy)
        _emit({"mode": "heuristic", "worst_case": out.worst_case,
               "worst_plan": [instance.components[e] for e in out.worst_plan.sorted()],
               "idle_sensors": out.idle_sensors,
               "surrogate": {
                   "cover": [instance.nodes[v] for v in out.cover.cover_nodes],
                   "cover_optimal": out.cover.optimal,
                   "blocks": [{"node": instance.nodes[v], "size": len(b)}
                              for v, b in out.partition.ordered_blocks],
                   "k_star": out.surrogate.k_star,
                   "value": out.surrogate_value,
               },
               "timings": out.timings,
               "defender": io.strategy_to_dict(instance, out.strategy, "defender")})
    return 0


def cmd_evaluate(args) -> int:
    instance = io.parse_instance(args.instance)
    player, sigma = io.parse_strategy(args.strategy, instance)
    if player == "defender":
        value, plan = worst_case_evaluation(instance, sigma)
        u = undetection_marginals(instance, sigma)
        _emit({"player": player, "worst_case": value,
               "worst_plan": [instance.components[e] for e in plan.sorted()],
               "undetection": {instance.components[e]: float(u[e]) for e in range(instance.n_components)}})
    else:
        value, s = best_pure_inspection(instance, attack_marginals(instance, sigma))
        _emit({"player": player, "best_response_value": value,
               "best_response": [[k + 1, instance.nodes[v]] for k, v in s.placed()]})
    return 0


def cmd_verify(args) -> int:
    instance = io.parse_instance(args.instance)
    p1, sigma1 = io.parse_strategy(args.sigma1, instance)
    p2, sigma2 = io.parse_strategy(args.sigma2, instance)
    if (p1, p2) != ("defender", "attacker"):
        raise ValidationError("expected a defender strategy followed by an attacker strategy", code="bad-argument")
    cert = verify_equilibrium(instance, sigma1, sigma2, tol=args.tol, defender_cap=args.cap)
    _emit({"payoff": payoff(instance, sigma1, sigma2), **_certificate_dict(cert)})
    return 0


def gap_curve_rows(template, b1_values: list[int], b2: int | None = None, step: float = 0.05,
                   exact: str = "colgen", time_budget: float | None = None) -> list[dict]:
    rows = []
    for b1 in b1_values:
        inst = template.with_sensors(stepped_accuracies(b1, step))
        if b2 is not None:
            inst = inst.with_budget(b2)
        t0 = time.perf_counter()
        out = solve_heuristic(inst, time_budget=time_budget)
        t1 = time.perf_counter()
        if exact == "matrix":
            res = solve_exact(inst, cap=DEFAULT_CELL_CAP)
            columns = len(res.inspection)
        else:
            res = solve_column_generation(inst, pricing_mode="enumerate", seed=out.strategy)
            columns = res.info["columns"]
        t2 = time.perf_counter()
        gap = optimality_gap(out.worst_case, res.value)
        rows.append({
            "b1": b1,
            "exact_value": res.value,
            "heuristic_worst_case": out.worst_case,
            "relative_gap": gap.gap,
            "heuristic_seconds": t1 - t0,
            "exact_seconds": t2 - t1,
            "cover_seconds": out.timings["cover"],
            "cover_size": out.cover.size,
            "cover_optimal": out.cover.optimal,
            "exact_columns": columns,
        })
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=GAP_CURVE_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def cmd_gap_curve(args) -> int:
    template = io.parse_instance(args.instance)
    rows = gap_curve_rows(template, parse_range(args.b1), b2=args.b2, step=args.accuracy_step,
                          exact=args.exact, time_budget=args.time_budget)
    text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    overlap, p = parse_overlap(args.overlap)
    inst = generate_instance(args.seed, args.nodes, args.components, args.sensors, args.budget,
                             overlap=overlap, p=p, accuracy_range=tuple(args.accuracy_range))
    text = io.serialize_instance(inst)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netinspect", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable error payload on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="equilibrium or heuristic inspection strategy")
    p.add_argument("mode", choices=["exact", "disjoint", "heuristic"])
    p.add_argument("instance")
    p.add_argument("--method", choices=["matrix", "colgen"], default="matrix")
    p.add_argument("--pricing", choices=["enumerate", "greedy"], default="enumerate")
    p.add_argument("--cap", type=int, default=DEFAULT_CELL_CAP, help="max payoff-matrix cells")
    p.add_argument("--time-budget", type=float, default=None, help="set-cover search seconds")
    p.add_argument("--out-prefix", default=None, help="write <prefix>.defender.json / .attacker.json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evaluate", help="best-response value against a strategy file")
    p.add_argument("instance")
    p.add_argument("strategy")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("verify", help="pure-deviation certificate for a strategy pair")
    p.add_argument("instance")
    p.add_argument("sigma1")
    p.add_argument("sigma2")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--cap", type=int, default=DEFAULT_CELL_CAP, help="max defender positionings to scan")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gap-curve", help="CSV of heuristic gap and runtimes over sensor counts")
    p.add_argument("instance")
    p.add_argument("--b1", required=True, help="e.g. 1..4")
    p.add_argument("--b2", type=int, default=None)
    p.add_argument("--accuracy-step", type=float, default=0.05, help="sensor k accuracy is 1 - step*(k-1)")
    p.add_argument("--exact", choices=["colgen", "matrix"], default="colgen")
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gap_curve)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--components", type=int, required=True)
    p.add_argument("--sensors", type=int, required=True, help="b1")
    p.add_argument("--budget", type=int, required=True, help="b2")
    p.add_argument("--overlap", default="disjoint", help="disjoint | random(p)")
    p.add_argument("--accuracy-range", type=float, nargs=2, default=[0.5, 1.0], metavar=("LO", "HI"))
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InspectionError as exc:
        if args.json:
            sys.stdout.write(json.dumps(exc.payload()) + "\n")
        else:
            where = f" [{exc.location}]" if exc.location else ""
            print(f"error ({exc.code}){where}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
