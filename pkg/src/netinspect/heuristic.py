"""Set-cover heuristic for overlapping monitoring sets.

A minimum cover is partitioned into disjoint blocks, the cycling inspection
strategy is built on that disjoint surrogate, and the strategy's worst case is
then evaluated against the original overlapping instance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .disjoint import DisjointProfile, cycling_inspection, profile_from_blocks, value_from_profile
from .game import AttackPlan, GameInstance, MixedStrategy, undetection_marginals
from .setcover import CoverResult, Partition, greedy_partition, min_set_cover

GAP_TOL = 1e-9


@dataclass(frozen=True)
class GapReport:
    gap: float
    relative: bool


@dataclass
class HeuristicOutcome:
    strategy: MixedStrategy
    surrogate: DisjointProfile
    cover: CoverResult
    partition: Partition
    worst_case: float
    worst_plan: AttackPlan
    surrogate_value: float
    idle_sensors: int
    timings: dict = field(default_factory=dict)
    gap_vs_value: float | None = None


def worst_case_evaluation(instance: GameInstance, sigma1: MixedStrategy) -> tuple[float, AttackPlan]:
    """Attacker best response: the b2 components most likely to go undetected.

    Exact because payoff against a plan is additive over its components.
    Ties go to the lower component index.
    """
    u = undetection_marginals(instance, sigma1)
    order = np.argsort(-u, kind="stable")
    top = sorted(int(e) for e in order[:instance.b2])
    return float(u[top].sum()), AttackPlan(frozenset(top))


def optimality_gap(worst_case: float, exact_value: float) -> GapReport:
    """Relative excess of ``worst_case`` over the game value; absolute when the value is 0."""
    diff = worst_case - exact_value
    if -GAP_TOL <= diff < 0:
        diff = 0.0
    if abs(exact_value) <= 1e-12:
        return GapReport(gap=diff, relative=False)
    return GapReport(gap=diff / exact_value, relative=True)


def solve_heuristic(instance: GameInstance, cover_mode: str = "exact", time_budget: float | None = None,
                    exact_value: float | None = None) -> HeuristicOutcome:
    timings = {}
    t0 = time.perf_counter()
    cover = min_set_cover(instance, mode=cover_mode, time_budget=time_budget)
    t1 = time.perf_counter()
    partition = greedy_partition(instance, cover)
    profile = profile_from_blocks(partition.nodes, [b for _, b in partition.ordered_blocks], instance.b2)
    t2 = time.perf_counter()
    strategy = cycling_inspection(instance.b1, profile)
    t3 = time.perf_counter()
    worst, plan = worst_case_evaluation(instance, strategy)
    t4 = time.perf_counter()
    timings.update(cover=t1 - t0, partition=t2 - t1, construct=t3 - t2, evaluate=t4 - t3, total=t4 - t0)
    outcome = HeuristicOutcome(
        strategy=strategy,
        surrogate=profile,
        cover=cover,
        partition=partition,
        worst_case=worst,
        worst_plan=plan,
        surrogate_value=value_from_profile(instance.sensor_accuracies, profile),
        idle_sensors=max(0, instance.b1 - cover.size),
        timings=timings,
    )
    if exact_value is not None:
        outcome.gap_vs_value = optimality_gap(worst, exact_value).gap
    return outcome
