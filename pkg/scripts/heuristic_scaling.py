"""Heuristic runtime and cover quality on large random instances.

Dense instances (overlap p >= 0.01 at 400 nodes) exhaust the set-cover time
budget and fall back to the greedy cover; ``cover_optimal`` shows which.
"""

import argparse
import time
from dataclasses import dataclass

from netinspect.generate import generate_instance
from netinspect.heuristic import solve_heuristic


@dataclass
class ScalingConfig:
    seed: int = 2024
    nodes: int = 400
    components: int = 492
    sensors: int = 10
    budget: int = 1
    time_budget: float = 10.0


def run(cfg: ScalingConfig, densities: list[float]) -> list[dict]:
    acc = [round(1 - 0.05 * k, 12) for k in range(cfg.sensors)]
    rows = []
    for p in densities:
        inst = generate_instance(cfg.seed, cfg.nodes, cfg.components, cfg.sensors, cfg.budget,
                                 overlap="random", p=p, accuracies=acc)
        t0 = time.perf_counter()
        out = solve_heuristic(inst, time_budget=cfg.time_budget)
        rows.append({"p": p, "seconds": time.perf_counter() - t0, "cover_size": out.cover.size,
                     "cover_optimal": out.cover.optimal, "worst_case": out.worst_case})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--densities", type=float, nargs="+", default=[0.003, 0.005, 0.01])
    ap.add_argument("--time-budget", type=float, default=ScalingConfig.time_budget)
    ap.add_argument("--seed", type=int, default=ScalingConfig.seed)
    args = ap.parse_args()
    cfg = ScalingConfig(seed=args.seed, time_budget=args.time_budget)
    print("p,seconds,cover_size,cover_optimal,worst_case")
    for r in run(cfg, args.densities):
        print(f"{r['p']},{r['seconds']:.3f},{r['cover_size']},{r['cover_optimal']},{r['worst_case']:.6f}")


if __name__ == "__main__":
    main()
