"""Dense two-phase tableau simplex.

The pivot loop is the hot kernel: the numpy implementation below is the
always-available fallback, and persuade._simplex_core holds the compiled
version with the identical contract.  persuade._kernel picks one at import.

Kernel contract (shared by both implementations)
------------------------------------------------
``pivot_loop(T, basis, tol, max_iter, bland_after) -> status``

* ``T`` is the (m+1) x (n+1) C-contiguous float64 tableau: m constraint
  rows ``[B^-1 A | B^-1 b]`` with nonnegative rhs, and the objective row
  of reduced costs with ``T[m, n] == -objective`` (minimisation).
* ``basis`` is the int64 array of basic column indices, updated in place.
* Entering column: most negative reduced cost (Dantzig); after
  ``bland_after`` consecutive degenerate pivots, Bland's rule (lowest
  eligible index) until progress resumes.  Leaving row: minimum ratio,
  ties broken by the lowest basic column index.
* Status: 0 optimal, 1 unbounded, 2 iteration limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, NumericFailure

OPTIMAL, UNBOUNDED, ITER_LIMIT = 0, 1, 2


def pivot_loop(
    T: np.ndarray, basis: np.ndarray, tol: float, max_iter: int, bland_after: int
) -> int:
    m = T.shape[0] - 1
    n = T.shape[1] - 1
    degenerate_streak = 0
    cost = T[m]
    for _ in range(max_iter):
        bland = degenerate_streak >= bland_after
        if bland:
            elig = np.nonzero(cost[:n] < -tol)[0]
            if len(elig) == 0:
                return OPTIMAL
            e = int(elig[0])
        else:
            e = int(np.argmin(cost[:n]))
            if cost[e] >= -tol:
                return OPTIMAL
        col = T[:m, e]
        pos = col > tol
        if not pos.any():
            return UNBOUNDED
        rhs = T[:m, n]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(pos, np.maximum(rhs, 0.0) / np.where(pos, col, 1.0), np.inf)
        best = ratios.min()
        tied = np.nonzero(ratios <= best + 1e-15 * (1.0 + best))[0]
        r = int(tied[np.argmin(basis[tied])])
        degenerate_streak = degenerate_streak + 1 if best <= tol else 0
        piv = T[r, e]
        T[r] /= piv
        colv = T[:, e].copy()
        colv[r] = 0.0
        T -= np.outer(colv, T[r])
        T[:, e] = 0.0
        T[r, e] = 1.0
        basis[r] = e
    return ITER_LIMIT


@dataclass
class LpResult:
    status: int
    x: np.ndarray
    value: float
    basis: np.ndarray
    iterations_hint: int = 0


def solve_lp(
    c,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    *,
    maximize: bool = False,
    tol: float = 1e-9,
    feas_tol: float = 1e-7,
    max_iter: int | None = None,
    kernel=None,
) -> LpResult:
    """Two-phase dense simplex over ``x >= 0``.

    Raises :class:`Infeasible` when phase 1 cannot zero the artificials and
    :class:`NumericFailure` on unboundedness or an iteration-limit stall.
    """
    if kernel is None:
        from ._kernel import KERNEL

        kernel = KERNEL
    c = np.asarray(c, dtype=float)
    if maximize:
        c = -c
    n = len(c)
    rows: list[np.ndarray] = []
    rhs: list[float] = []
    kinds: list[str] = []
    if A_ub is not None and len(A_ub):
        for row, b in zip(np.asarray(A_ub, dtype=float), np.asarray(b_ub, dtype=float)):
            if b < 0.0:
                rows.append(-row)
                rhs.append(-b)
                kinds.append("ge")
            else:
                rows.append(row)
                rhs.append(b)
                kinds.append("le")
    if A_eq is not None and len(A_eq):
        for row, b in zip(np.asarray(A_eq, dtype=float), np.asarray(b_eq, dtype=float)):
            if b < 0.0:
                rows.append(-row)
                rhs.append(-b)
            else:
                rows.append(row)
                rhs.append(b)
            kinds.append("eq")
    m = len(rows)
    A = np.vstack(rows) if m else np.empty((0, n))
    b = np.asarray(rhs, dtype=float)

    n_slack = sum(k != "eq" for k in kinds)
    n_art = sum(k != "le" for k in kinds)
    width = n + n_slack + n_art
    T = np.zeros((m + 1, width + 1))
    T[:m, :n] = A
    T[:m, width] = b
    basis = np.empty(m, dtype=np.int64)
    si = n
    ai = n + n_slack
    art_cols = []
    for i, k in enumerate(kinds):
        if k == "le":
            T[i, si] = 1.0
            basis[i] = si
            si += 1
        elif k == "ge":
            T[i, si] = -1.0
            si += 1
            T[i, ai] = 1.0
            basis[i] = ai
            art_cols.append(ai)
            ai += 1
        else:
            T[i, ai] = 1.0
            basis[i] = ai
            art_cols.append(ai)
            ai += 1
    if max_iter is None:
        max_iter = 200 * (m + width) + 2000

    if art_cols:
        # phase 1: minimise the artificial sum
        T[m, art_cols] = 1.0
        for i in range(m):
            if basis[i] in art_cols:
                T[m] -= T[i]
        status = kernel(T, basis, tol, max_iter, bland_after=max(20, m))
        if status == ITER_LIMIT:
            raise NumericFailure(f"phase 1 stalled after {max_iter} pivots (m={m}, n={width})")
        phase1 = -T[m, width]
        if phase1 > feas_tol:
            raise Infeasible(f"phase 1 optimum {phase1:.3e} > {feas_tol:.1e}")
        _evict_artificials(T, basis, np.array(art_cols), n + n_slack, tol)

    # phase 2 on the original objective
    T[m, :] = 0.0
    T[m, :n] = c
    for col in art_cols:
        T[:m, col] = 0.0  # artificials never re-enter
    for i in range(m):
        if T[m, basis[i]] != 0.0:
            T[m] -= T[m, basis[i]] * T[i]
    status = kernel(T, basis, tol, max_iter, bland_after=max(20, m))
    if status == UNBOUNDED:
        raise NumericFailure("objective unbounded on the feasible cone")
    if status == ITER_LIMIT:
        raise NumericFailure(f"phase 2 stalled after {max_iter} pivots (m={m}, n={width})")

    x = np.zeros(width)
    x[basis] = np.maximum(T[:m, width], 0.0)
    xx = x[:n]
    value = float(c @ xx)
    if maximize:
        value = -value
    return LpResult(status=status, x=xx, value=value, basis=basis.copy())


def _evict_artificials(T, basis, art_cols, n_real, tol) -> None:
    """Pivot zero-level artificial variables out of the basis when possible;
    a row with no eligible pivot is redundant and is zeroed."""
    m = T.shape[0] - 1
    art_set = set(int(a) for a in art_cols)
    for i in range(m):
        if int(basis[i]) not in art_set:
            continue
        row = T[i, :n_real]
        j = int(np.argmax(np.abs(row)))
        if abs(row[j]) <= tol:
            T[i, :] = 0.0  # redundant constraint
            continue
        piv = T[i, j]
        T[i] /= piv
        colv = T[:, j].copy()
        colv[i] = 0.0
        T -= np.outer(colv, T[i])
        T[:, j] = 0.0
        T[i, j] = 1.0
        basis[i] = j
