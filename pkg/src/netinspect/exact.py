"""Exact equilibria: full-enumeration minimax LP, column generation, NE certificates.

Positionings are enumerated with the placed sensors forming a prefix of the
accuracy order (sensor k placed implies sensors 1..k-1 placed). Positionings
that leave a better sensor idle while a worse one is placed are weakly
dominated by swapping the two, so the value and the defender best-response
minimum are unchanged, and the count matches sum_i i! C(n, i).
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from math import comb, perm

import numpy as np

from .errors import SizeCapError, SolverError
from .game import (AttackPlan, GameInstance, MixedStrategy, SensorPositioning, attack_marginals,
                   payoff, undetection_rows)
from .heuristic import solve_heuristic, worst_case_evaluation
from .simplex import maximize

log = logging.getLogger(__name__)

DEFAULT_CELL_CAP = 2_000_000
DEFAULT_PLAN_CAP = 250_000
DEFAULT_TOL = 1e-9
REDUCED_COST_TOL = 1e-9
BATCH = 8192


def count_positionings(n: int, b1: int) -> int:
    return sum(perm(n, i) for i in range(b1 + 1))


def count_plans(n_components: int, b2: int) -> int:
    return sum(comb(n_components, j) for j in range(b2 + 1))


def iter_positionings(instance: GameInstance):
    b1 = instance.b1
    for i in range(b1 + 1):
        for p in itertools.permutations(range(instance.n), i):
            yield SensorPositioning(p + (None,) * (b1 - i))


def positioning_batches(instance: GameInstance, batch: int = BATCH):
    """Same order as :func:`iter_positionings`, as int arrays with -1 for unplaced."""
    b1 = instance.b1
    for i in range(b1 + 1):
        it = itertools.permutations(range(instance.n), i)
        while True:
            chunk = list(itertools.islice(it, batch))
            if not chunk:
                break
            arr = np.full((len(chunk), b1), -1, dtype=np.int64)
            if i:
                arr[:, :i] = np.array(chunk, dtype=np.int64)
            yield arr


def _positioning_from_row(row) -> SensorPositioning:
    return SensorPositioning(tuple(None if v < 0 else int(v) for v in row))


def _positioning_rows(positionings) -> np.ndarray:
    return np.array([[(-1 if v is None else v) for v in s.placements] for s in positionings],
                    dtype=np.int64).reshape(len(positionings), -1)


def iter_plans(instance: GameInstance, exact_size: bool = False):
    sizes = [instance.b2] if exact_size else range(instance.b2 + 1)
    for j in sizes:
        for c in itertools.combinations(range(instance.n_components), j):
            yield AttackPlan(frozenset(c))


def plan_incidence(instance: GameInstance, plans) -> np.ndarray:
    P = np.zeros((len(plans), instance.n_components))
    for i, t in enumerate(plans):
        if t.targets:
            P[i, list(t.targets)] = 1.0
    return P


@dataclass
class MatrixGame:
    instance: GameInstance
    row_actions: list[SensorPositioning]
    col_actions: list[AttackPlan]
    payoff_matrix: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.payoff_matrix.shape


@dataclass(frozen=True)
class Certificate:
    defender_gap: float | None
    attacker_gap: float
    tol: float = DEFAULT_TOL
    partial: bool = False

    @property
    def certified(self) -> bool:
        if self.partial or self.defender_gap is None:
            return False
        return self.defender_gap <= self.tol and self.attacker_gap <= self.tol


@dataclass
class EquilibriumResult:
    inspection: MixedStrategy
    attack: MixedStrategy
    value: float
    certificate: Certificate
    info: dict = field(default_factory=dict)


def enumerate_actions(instance: GameInstance, cap: int = DEFAULT_CELL_CAP,
                      prune_dominated: bool = False) -> MatrixGame:
    """Full action sets and payoff matrix. ``prune_dominated`` keeps only plans of size b2."""
    n_rows = count_positionings(instance.n, instance.b1)
    n_cols = comb(instance.n_components, instance.b2) if prune_dominated else count_plans(
        instance.n_components, instance.b2)
    if n_rows * n_cols > cap:
        raise SizeCapError(f"|A1| = {n_rows} and |A2| = {n_cols} give {n_rows * n_cols} cells, cap is {cap}")
    rows = list(iter_positionings(instance))
    cols = list(iter_plans(instance, exact_size=prune_dominated))
    U = undetection_rows(instance, _positioning_rows(rows)) @ plan_incidence(instance, cols).T
    return MatrixGame(instance, rows, cols, U)


def minimax(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, float, dict]:
    """Row player minimizes. Returns (row mix, column mix, value, lp info).

    With G = c - M (c chosen so every entry is at least 1) the row player
    maximizes G and the column player minimizes it, so the column player's LP
    max 1.y s.t. G y <= 1 has a feasible slack basis. The column mix is y
    normalized, the row mix comes from the duals, and val(G) = 1 / sum(y).
    """
    M = np.asarray(M, dtype=float)
    shift = float(M.max()) + 1.0
    lp = maximize(np.ones(M.shape[1]), shift - M, np.ones(M.shape[0]))
    if lp.value <= 0:
        raise SolverError("degenerate minimax LP (zero objective)")
    y = lp.x / lp.x.sum()
    x = lp.dual / lp.dual.sum()
    value = shift - 1.0 / lp.value
    upper = float((x @ M).max())
    lower = float((M @ y).min())
    if upper - lower > DEFAULT_TOL:
        raise SolverError(f"minimax duality gap {upper - lower:.3e} above tolerance "
                          f"(residuals {lp.residuals})")
    return x, y, value, {"iterations": lp.iterations, "bland": lp.bland_engaged,
                         "upper": upper, "lower": lower, **lp.residuals}


def _mix(actions, probs) -> MixedStrategy:
    keep = [(a, float(p)) for a, p in zip(actions, probs) if p > 0]
    return MixedStrategy.from_pairs(keep)


def solve_matrix_game(game: MatrixGame) -> EquilibriumResult:
    x, y, value, info = minimax(game.payoff_matrix)
    sigma1 = _mix(game.row_actions, x)
    sigma2 = _mix(game.col_actions, y)
    cert = Certificate(defender_gap=value - info["lower"], attacker_gap=info["upper"] - value)
    return EquilibriumResult(sigma1, sigma2, value, cert, info)


def solve_exact(instance: GameInstance, cap: int = DEFAULT_CELL_CAP) -> EquilibriumResult:
    t0 = time.perf_counter()
    game = enumerate_actions(instance, cap=cap)
    t1 = time.perf_counter()
    res = solve_matrix_game(game)
    res.info["timings"] = {"enumerate": t1 - t0, "lp": time.perf_counter() - t1}
    return res


def best_pure_inspection(instance: GameInstance, attack_probs: np.ndarray) -> tuple[float, SensorPositioning]:
    """min over positionings of sum_e p(e) * undetected(s, e), scanning every positioning.

    Ties go to the first positioning in enumeration order.
    """
    best_val = np.inf
    best_row = None
    for arr in positioning_batches(instance):
        vals = undetection_rows(instance, arr) @ attack_probs
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_row = arr[i]
    return best_val, _positioning_from_row(best_row)


def greedy_pure_inspection(instance: GameInstance, attack_probs: np.ndarray) -> tuple[float, SensorPositioning]:
    """Place sensors one at a time, each at the node with the lowest resulting cost."""
    inc = instance.incidence
    weight = attack_probs.astype(float).copy()
    used: list[int] = []
    for lam in instance.sensor_accuracies:
        cost = (weight * (1.0 - lam * inc)).sum(axis=1)
        if used:
            cost[used] = np.inf
        v = int(np.argmin(cost))
        used.append(v)
        weight = weight * (1.0 - lam * inc[v])
    s = SensorPositioning(tuple(used))
    return float(weight.sum()), s


def verify_equilibrium(instance: GameInstance, sigma1: MixedStrategy, sigma2: MixedStrategy,
                       tol: float = DEFAULT_TOL, defender_cap: int = DEFAULT_CELL_CAP) -> Certificate:
    """Largest gain either player gets from a pure deviation."""
    value = payoff(instance, sigma1, sigma2)
    worst, _ = worst_case_evaluation(instance, sigma1)
    attacker_gap = worst - value
    if count_positionings(instance.n, instance.b1) > defender_cap:
        return Certificate(defender_gap=None, attacker_gap=attacker_gap, tol=tol, partial=True)
    best, _ = best_pure_inspection(instance, attack_marginals(instance, sigma2))
    return Certificate(defender_gap=value - best, attacker_gap=attacker_gap, tol=tol)


def solve_column_generation(instance: GameInstance, pricing_mode: str = "enumerate",
                            seed: MixedStrategy | None = None, plan_cap: int = DEFAULT_PLAN_CAP,
                            max_iterations: int = 10_000, time_budget: float | None = None) -> EquilibriumResult:
    """Defender LP over a growing positioning set; attack plans fully materialized.

    The master is the matrix game restricted to the current positionings; its
    attacker mix supplies the duals. Pricing looks for a positioning whose cost
    against those duals undercuts the master value by more than the tolerance.
    """
    if pricing_mode not in ("enumerate", "greedy"):
        raise ValueError(f"unknown pricing mode {pricing_mode!r}")
    n_plans = count_plans(instance.n_components, instance.b2)
    if n_plans > plan_cap:
        raise SizeCapError(f"|A2| = {n_plans} attack plans exceed the column-generation cap {plan_cap}")
    t0 = time.perf_counter()
    plans = list(iter_plans(instance))
    P = plan_incidence(instance, plans)
    if seed is None:
        seed = solve_heuristic(instance, time_budget=time_budget).strategy
    instance.check_inspection(seed)
    rows: list[SensorPositioning] = list(dict.fromkeys(seed.actions))
    U = undetection_rows(instance, _positioning_rows(rows)) @ P.T
    added = 0
    lp_iterations = 0
    pricing_seconds = 0.0
    for iteration in range(max_iterations):
        x, y, z, info = minimax(U)
        lp_iterations += info["iterations"]
        p = y @ P
        tp = time.perf_counter()
        if pricing_mode == "enumerate":
            best, s = best_pure_inspection(instance, p)
        else:
            best, s = greedy_pure_inspection(instance, p)
        pricing_seconds += time.perf_counter() - tp
        if best - z >= -REDUCED_COST_TOL:
            break
        if s in rows:
            raise SolverError(f"pricing returned a column already in the master (reduced cost {best - z:.3e})")
        rows.append(s)
        added += 1
        row = undetection_rows(instance, _positioning_rows([s])) @ P.T
        U = np.vstack([U, row])
    else:
        raise SolverError(f"column generation did not converge in {max_iterations} iterations")
    sigma1 = _mix(rows, x)
    sigma2 = _mix(plans, y)
    upper = float((x @ U).max())
    cert = Certificate(
        defender_gap=(z - best) if pricing_mode == "enumerate" else None,
        attacker_gap=upper - z,
        partial=pricing_mode != "enumerate",
    )
    info = {
        "columns": len(rows),
        "columns_added": added,
        "iterations": iteration + 1,
        "lp_iterations": lp_iterations,
        "heuristic_priced": pricing_mode != "enumerate",
        "timings": {"total": time.perf_counter() - t0, "pricing": pricing_seconds},
    }
    return EquilibriumResult(sigma1, sigma2, z, cert, info)

