"""Compare the disjoint closed-form value with the LP value on random instances."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from netinspect.disjoint import disjoint_equilibrium
from netinspect.exact import solve_exact, verify_equilibrium
from netinspect.generate import generate_instance


@dataclass
class CrosscheckConfig:
    trials: int = 200
    seed: int = 0
    max_nodes: int = 5
    max_components: int = 12
    max_sensors: int = 3
    max_budget: int = 6


def run(cfg: CrosscheckConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    diffs, gaps = [], []
    t0 = time.perf_counter()
    for i in range(cfg.trials):
        n = int(rng.integers(1, cfg.max_nodes + 1))
        m = int(rng.integers(n, cfg.max_components + 1))
        b1 = int(rng.integers(1, min(cfg.max_sensors, n) + 1))
        b2 = int(rng.integers(1, min(cfg.max_budget, m) + 1))
        inst = generate_instance(cfg.seed * 100_000 + i, n, m, b1, b2, accuracy_range=(0.05, 1.0))
        sigma1, sigma2, value, _ = disjoint_equilibrium(inst)
        diffs.append(abs(solve_exact(inst).value - value))
        cert = verify_equilibrium(inst, sigma1, sigma2)
        gaps.append(max(cert.defender_gap, cert.attacker_gap))
    return {"trials": cfg.trials, "max_value_diff": max(diffs), "max_deviation_gain": max(gaps),
            "seconds": time.perf_counter() - t0}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=CrosscheckConfig.trials)
    ap.add_argument("--seed", type=int, default=CrosscheckConfig.seed)
    args = ap.parse_args()
    for k, v in run(CrosscheckConfig(trials=args.trials, seed=args.seed)).items():
        print(f"{k}: {v}")


if __name__ == "__main__":
    main()
