"""Dense-tableau primal simplex for ``max c.x s.t. A x <= b, x >= 0`` with ``b >= 0``.

The slack basis is feasible because ``b >= 0``, so no phase one is needed.
Entering variables follow Dantzig's rule; after a run of pivots without
objective progress the routine switches to Bland's rule, which cannot cycle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import SolverError

log = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
OPTIMALITY_TOL = 1e-12
RESIDUAL_TOL = 1e-9


@dataclass
class LPResult:
    x: np.ndarray
    dual: np.ndarray
    value: float
    iterations: int
    bland_engaged: bool
    residuals: dict = field(default_factory=dict)


def _residuals(c, A, b, x, y) -> dict:
    primal = max(float(np.max(A @ x - b, initial=0.0)), float(np.max(-x, initial=0.0)))
    dual = max(float(np.max(c - A.T @ y, initial=0.0)), float(np.max(-y, initial=0.0)))
    gap = abs(float(c @ x) - float(b @ y))
    return {"primal_infeasibility": primal, "dual_infeasibility": dual, "duality_gap": gap}


def maximize(c, A, b, *, max_iter: int | None = None, stall_limit: int | None = None,
             residual_tol: float = RESIDUAL_TOL) -> LPResult:
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, nvar = A.shape
    if c.shape != (nvar,) or b.shape != (m,):
        raise ValueError("inconsistent LP dimensions")
    if np.any(b < 0):
        raise ValueError("right-hand side must be nonnegative")

    T = np.zeros((m + 1, nvar + m + 1))
    T[:m, :nvar] = A
    T[:m, nvar:nvar + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :nvar] = -c
    basis = np.arange(nvar, nvar + m)

    if stall_limit is None:
        stall_limit = 5 * (m + nvar)
    if max_iter is None:
        max_iter = 50 * (m + nvar) + 1000

    bland = False
    stall = 0
    best = T[m, -1]
    it = 0
    while True:
        reduced = T[m, :-1]
        if bland:
            candidates = np.flatnonzero(reduced < -OPTIMALITY_TOL)
            if candidates.size == 0:
                break
            j = int(candidates[0])
        else:
            j = int(np.argmin(reduced))
            if reduced[j] >= -OPTIMALITY_TOL:
                break
        col = T[:m, j]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            raise SolverError("LP is unbounded", code="solver-numeric")
        ratios = T[rows, -1] / col[rows]
        rmin = ratios.min()
        tied = rows[ratios <= rmin + OPTIMALITY_TOL * max(1.0, abs(rmin))]
        # smallest basic variable index among tied rows (Bland's leaving rule)
        r = int(tied[np.argmin(basis[tied])])

        T[r] /= T[r, j]
        factors = T[:, j].copy()
        factors[r] = 0.0
        T -= np.outer(factors, T[r])
        T[:, j] = 0.0
        T[r, j] = 1.0
        basis[r] = j
        it += 1

        if T[m, -1] > best + OPTIMALITY_TOL:
            best = T[m, -1]
            stall = 0
        else:
            stall += 1
            if not bland and stall > stall_limit:
                log.debug("no objective progress for %d pivots; switching to Bland's rule", stall)
                bland = True
        if it > max_iter:
            raise SolverError(f"simplex did not terminate within {max_iter} pivots")

    x = np.zeros(nvar)
    in_x = basis < nvar
    x[basis[in_x]] = T[:m, -1][in_x]
    x = np.maximum(x, 0.0)
    y = np.maximum(T[m, nvar:nvar + m].copy(), 0.0)
    res = _residuals(c, A, b, x, y)
    if max(res.values()) > residual_tol:
        raise SolverError(f"simplex residuals above tolerance: {res}")
    return LPResult(x=x, dual=y, value=float(c @ x), iterations=it, bland_engaged=bland, residuals=res)
