"""Independent reference computations used only by the tests.

Nothing here calls into the solver paths it checks: payoffs are summed term by
term over (positioning, plan, component) triples, covers and best responses
are found by exhaustive enumeration, and minimax values come from scipy's LP
or from fictitious play.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linprog

from netinspect.game import AttackPlan, SensorPositioning


def undetected(instance, s, e):
    prob = 1.0
    for k, v in enumerate(s.placements):
        if v is not None and e in instance.monitoring[v]:
            prob *= 1.0 - instance.sensor_accuracies[k]
    return prob


def payoff(instance, sigma1, sigma2):
    total = 0.0
    for s, p1 in sigma1:
        for t, p2 in sigma2:
            for e in t.targets:
                total += float(p1) * float(p2) * undetected(instance, s, e)
    return total


def all_plans(instance):
    for j in range(instance.b2 + 1):
        for c in itertools.combinations(range(instance.n_components), j):
            yield AttackPlan(frozenset(c))


def all_positionings(instance):
    """Every vector in (V + unplaced)^b1 with distinct placed nodes, gaps included."""
    choices = [None] + list(range(instance.n))
    for combo in itertools.product(choices, repeat=instance.b1):
        placed = [v for v in combo if v is not None]
        if len(placed) == len(set(placed)):
            yield SensorPositioning(combo)


def worst_case(instance, sigma1):
    from netinspect.game import MixedStrategy
    best = -1.0
    for t in all_plans(instance):
        val = payoff(instance, sigma1, MixedStrategy.pure(t))
        best = max(best, val)
    return best


def best_inspection(instance, sigma2):
    from netinspect.game import MixedStrategy
    return min(payoff(instance, MixedStrategy.pure(s), sigma2) for s in all_positionings(instance))


def min_cover_size(instance):
    universe = set(range(instance.n_components))
    for size in range(1, instance.n + 1):
        for combo in itertools.combinations(range(instance.n), size):
            covered = set()
            for v in combo:
                covered |= instance.monitoring[v]
            if covered == universe:
                return size
    raise AssertionError("no cover")


def scipy_minimax(M):
    """Value of the game where the row player minimizes M."""
    m, n = M.shape
    # variables x_1..x_m, z ; minimize z s.t. x^T M[:, j] - z <= 0
    c = np.zeros(m + 1)
    c[-1] = 1.0
    A_ub = np.hstack([M.T, -np.ones((n, 1))])
    b_ub = np.zeros(n)
    A_eq = np.hstack([np.ones((1, m)), np.zeros((1, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0],
                  bounds=[(0, None)] * m + [(None, None)], method="highs")
    assert res.status == 0
    return float(res.fun)


def fictitious_play(M, iterations=20000):
    """Returns (lower, upper) bounds on the value from empirical play frequencies."""
    m, n = M.shape
    row_counts = np.zeros(m)
    col_counts = np.zeros(n)
    row_counts[0] = 1
    col_counts[0] = 1
    row_payoff = M[:, 0].copy()       # cumulative payoff of each row vs column history
    col_payoff = M[0, :].copy()
    for _ in range(iterations):
        i = int(np.argmin(row_payoff))
        j = int(np.argmax(col_payoff))
        row_counts[i] += 1
        col_counts[j] += 1
        row_payoff += M[:, j]
        col_payoff += M[i, :]
    x = row_counts / row_counts.sum()
    y = col_counts / col_counts.sum()
    return float((M @ y).min()), float((x @ M).max())
