"""The sender's optimisation over mean-preserving contractions.

The primal grid LP maximises the expected payoff over grid-supported
distributions whose integrated CDF is dominated by the prior's (optionally
bounded below by an outside-information floor).  The dual price problem is
solved as its own LP (convex piecewise-linear majorants of the payoff,
weighted by the prior), and the two are cross-checked rather than one being
read off the other's multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _simplex
from .errors import DomainError, NoRoot, NumericFailure
from .measures import (
    Distribution,
    GridSpec,
    conditional_mean,
    integrated_cdf,
    project_masses,
    upper_censorship,
)
from .payoffs import Payoff

DUALITY_TOL = 1e-8
SLACK_TOL = 1e-6

__all__ = [
    "PriceFunction",
    "SolveReport",
    "SlacknessReport",
    "ArgmaxProbe",
    "working_grid",
    "solve",
    "dual_prices",
    "check_slackness",
    "upper_censorship_solve",
    "probe_argmax",
    "expectation",
]


def expectation(u: Payoff, dist: Distribution) -> float:
    """Exact integral of the payoff against the distribution."""
    from numpy.polynomial import polynomial as P

    total = sum(w * u.eval(x) for x, w in dist.atoms)
    for a, b, w in dist.uniforms:
        dens = w / (b - a)
        for lo, hi, c, _ in u.segments:
            left, right = max(lo, a), min(hi, b)
            if right > left:
                anti = P.polyint(c)
                total += dens * (P.polyval(right, anti) - P.polyval(left, anti))
    return float(total)


@dataclass(frozen=True)
class PriceFunction:
    """Convex piecewise-linear majorant of the payoff on the grid."""

    points: np.ndarray
    values: np.ndarray

    def __call__(self, x):
        return np.interp(np.asarray(x, dtype=float), self.points, self.values)

    def convexity_residual(self) -> float:
        """Most negative slope jump (>= -1e-9 when valid)."""
        s = np.diff(self.values) / np.diff(self.points)
        return float(np.min(np.diff(s))) if len(s) > 1 else 0.0

    def majorization_residual(self, u_vals: np.ndarray) -> float:
        """Largest amount by which the payoff pokes above the prices."""
        return float(np.max(u_vals - self.values))


@dataclass(frozen=True)
class SlacknessReport:
    ok: bool
    residual_affine: float      # slope jumps where the contraction is strict
    residual_support: float     # price minus payoff on the optimizer support
    violations: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class SolveReport:
    value: float
    optimizer: Distribution
    points: np.ndarray
    masses: np.ndarray
    prior_curve: np.ndarray          # integrated CDF of the prior at points
    payoff_values: np.ndarray
    dual: PriceFunction | None = None
    dual_value: float | None = None

    @property
    def gap(self) -> float | None:
        if self.dual_value is None:
            return None
        return self.dual_value - self.value

    def optimizer_curve(self) -> np.ndarray:
        """Integrated CDF of the optimizer at the grid points."""
        return _curve_from_masses(self.points, self.masses)


@dataclass
class ArgmaxProbe:
    """Finite stand-in for an argmax set: the base optimizer plus vertex
    solutions of the optimal face under seeded secondary objectives and two
    canonical (least/most informative) directions."""

    value: float
    members: list[Distribution]
    member_masses: list[np.ndarray]
    points: np.ndarray
    prior: Distribution
    payoff: Payoff
    floor: Distribution | None = None
    seed: int = 0


def _curve_from_masses(points: np.ndarray, masses: np.ndarray) -> np.ndarray:
    cm = np.concatenate([[0.0], np.cumsum(masses)])[:-1]       # F just left of x_j
    cmx = np.concatenate([[0.0], np.cumsum(masses * points)])[:-1]
    return points * cm - cmx


def working_grid(
    grid: GridSpec | Sequence[float] | None,
    u: Payoff | None = None,
    extra: Sequence[float] = (),
) -> np.ndarray:
    """Sorted working grid: the uniform grid merged with every payoff
    breakpoint and any extra points (the LP value is biased at kinks the
    grid cannot express)."""
    if grid is None:
        grid = GridSpec(401)
    base = grid.points if isinstance(grid, GridSpec) else np.asarray(grid, dtype=float)
    parts = [base, np.asarray([0.0, 1.0])]
    if u is not None:
        parts.append(u.breakpoints)
    if len(extra):
        parts.append(np.asarray(extra, dtype=float))
    pts = np.unique(np.concatenate(parts))
    if pts[0] < -1e-12 or pts[-1] > 1 + 1e-12:
        raise DomainError("grid points must lie in [0, 1]")
    keep = [pts[0]]
    for x in pts[1:]:
        if x - keep[-1] > 1e-12:
            keep.append(float(x))
    keep[-1] = 1.0
    return np.array(keep)


def _distribution_from_masses(points: np.ndarray, masses: np.ndarray) -> Distribution:
    atoms = [(float(x), float(m)) for x, m in zip(points, masses) if m > 1e-12]
    return Distribution.make(atoms=atoms)


def solve(
    u: Payoff,
    f0: Distribution,
    grid: GridSpec | Sequence[float] | None = None,
    g0: Distribution | None = None,
    *,
    with_dual: bool = True,
    extra_points: Sequence[float] = (),
    value_pin: float | None = None,
    secondary: np.ndarray | None = None,
) -> SolveReport:
    """Maximise the expected payoff over grid distributions dominated by the
    prior (and dominating ``g0`` when given).

    ``value_pin``/``secondary`` re-optimise a secondary objective over the
    face where the payoff value equals the pin (used by the argmax probe).
    """
    extra = list(extra_points)
    extra.extend(f0.support_points)
    if g0 is not None:
        extra.extend(g0.support_points)
    pts = working_grid(grid, u, extra)
    n = len(pts)
    uv = u.values(pts)
    c0 = integrated_cdf(f0)(pts)

    diff = np.subtract.outer(pts, pts)  # (j, i): x_j - x_i
    pos = np.maximum(diff, 0.0)
    interior = slice(1, n - 1)
    A_ub = pos[interior]
    b_ub = c0[interior]
    rows_eq = [np.ones(n), 1.0 - pts]
    rhs_eq = [1.0, float(c0[-1])]
    if g0 is not None:
        cg = integrated_cdf(g0)(pts)
        mask = cg[interior] > 1e-14
        if mask.any():
            A_ub = np.vstack([A_ub, -pos[interior][mask]])
            b_ub = np.concatenate([b_ub, -cg[interior][mask]])
    objective = uv
    if value_pin is not None:
        rows_eq.append(uv)
        rhs_eq.append(float(value_pin))
        if secondary is None:
            raise DomainError("value_pin requires a secondary objective")
        objective = secondary

    res = _simplex.solve_lp(
        objective, A_ub=A_ub, b_ub=b_ub, A_eq=np.vstack(rows_eq), b_eq=np.asarray(rhs_eq),
        maximize=True,
    )
    masses = np.maximum(res.x, 0.0)
    total = masses.sum()
    if abs(total - 1.0) > 1e-7:
        raise NumericFailure(f"optimizer mass {total!r} drifted from 1")
    masses /= total
    value = float(uv @ masses)
    report = SolveReport(
        value=value,
        optimizer=_distribution_from_masses(pts, masses),
        points=pts,
        masses=masses,
        prior_curve=c0,
        payoff_values=uv,
    )
    if with_dual and value_pin is None:
        price = dual_prices(u, f0, pts)
        report.dual = price
        report.dual_value = float(project_masses(f0, pts) @ price.values)
    return report


def dual_prices(
    u: Payoff,
    f0: Distribution,
    grid: GridSpec | Sequence[float] | None = None,
) -> PriceFunction:
    """Minimise the prior-weighted integral over convex piecewise-linear
    majorants of the payoff on the grid.

    Substituting ``p = u + s`` with ``s >= 0`` leaves only the convexity
    rows: ``h_{j-1} p_{j+1} - (h_{j-1}+h_j) p_j + h_j p_{j-1} >= 0``.
    """
    pts = working_grid(grid, u, f0.support_points)
    n = len(pts)
    uv = u.values(pts)
    w = project_masses(f0, pts)
    h = np.diff(pts)
    rows = np.zeros((n - 2, n))
    idx = np.arange(n - 2)
    rows[idx, idx] = h[1:]
    rows[idx, idx + 1] = -(h[:-1] + h[1:])
    rows[idx, idx + 2] = h[:-1]
    b = -(rows @ uv)
    # A s >= b  as  -A s <= -b
    res = _simplex.solve_lp(w, A_ub=-rows, b_ub=-b, maximize=False)
    p = uv + np.maximum(res.x, 0.0)
    return PriceFunction(points=pts, values=p)


def check_slackness(
    report: SolveReport, f0: Distribution, tol: float = SLACK_TOL
) -> SlacknessReport:
    """Verify the optimality certificate: prices are affine wherever the
    optimizer is strictly below the prior curve, and equal the payoff on the
    optimizer's support."""
    if report.dual is None:
        raise DomainError("report carries no dual prices")
    pts, p = report.dual.points, report.dual.values
    if len(pts) != len(report.points) or not np.allclose(pts, report.points):
        raise DomainError("dual and primal grids differ")
    cf = report.optimizer_curve()
    h = np.diff(pts)
    slopes = np.diff(p) / h
    jumps = np.diff(slopes)  # at interior points 1..n-2
    strict = report.prior_curve[1:-1] - cf[1:-1] > tol
    res_a = float(np.max(np.abs(jumps[strict]))) if strict.any() else 0.0
    carry = report.masses > tol
    res_b = float(np.max(p[carry] - report.payoff_values[carry])) if carry.any() else 0.0
    violations = []
    if res_a > tol:
        violations.append(("affine", res_a))
    if res_b > tol:
        violations.append(("support", res_b))
    return SlacknessReport(
        ok=not violations,
        residual_affine=res_a,
        residual_support=res_b,
        violations=tuple(violations),
    )


def _censorship_shape(v: Payoff) -> None:
    kinds = [k for _, _, _, k in v.segments]
    i = 0
    while i < len(kinds) and kinds[i] == "convex":
        i += 1
    if i == 0 or any(k == "convex" for k in kinds[i:]):
        raise DomainError(
            "payoff must be strictly convex on the left with a concave tail"
        )


def upper_censorship_solve(
    v: Payoff, f0: Distribution, *, residual_tol: float = 1e-10, scan: int = 257
) -> tuple[float, float, Distribution]:
    """Cutoff for the censorship optimum of a convex-then-concave payoff
    under an atomless convex-support prior: bisect the tangency residual
    ``v(b) - v(a) - v'(b) (b - a)`` where ``b`` is the conditional mean of
    the pooled tail ``[a, 1]``."""
    _censorship_shape(v)
    if not f0.is_atomless:
        raise DomainError("prior must be atomless")
    segs = f0.uniforms
    for (_, hi, _), (lo2, _, _) in zip(segs[:-1], segs[1:]):
        if lo2 - hi > 1e-12:
            raise DomainError("prior support must be an interval")
    lo, hi = segs[0][0], segs[-1][1]

    def residual(a: float) -> float:
        b = conditional_mean(f0, a, 1.0)
        return v.eval(b) - v.eval(a) - v.deriv(b) * (b - a)

    span = hi - lo
    grid = lo + span * (1.0 - np.geomspace(1.0, 1e-9, scan))
    grid = np.clip(grid, lo, hi - 1e-9 * span)
    vals = np.array([residual(a) for a in grid])
    sign_change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if len(sign_change) == 0:
        k = int(np.argmin(np.abs(vals)))
        a = float(grid[k])
        b = conditional_mean(f0, a, 1.0)
        raise NoRoot(
            f"tangency residual does not change sign (best |residual| {abs(vals[k]):.2e})",
            candidate=(a, b, upper_censorship(f0, a)),
        )
    i = int(sign_change[0])
    a_lo, a_hi = float(grid[i]), float(grid[i + 1])
    r_lo = vals[i]
    for _ in range(200):
        mid = 0.5 * (a_lo + a_hi)
        r_mid = residual(mid)
        if abs(r_mid) <= residual_tol or a_hi - a_lo < 1e-15:
            a_lo = a_hi = mid
            break
        if np.sign(r_mid) == np.sign(r_lo):
            a_lo, r_lo = mid, r_mid
        else:
            a_hi = mid
    a = 0.5 * (a_lo + a_hi)
    b = conditional_mean(f0, a, 1.0)
    return a, b, upper_censorship(f0, a)


def probe_argmax(
    u: Payoff,
    f0: Distribution,
    grid: GridSpec | Sequence[float] | None = None,
    g0: Distribution | None = None,
    k: int = 8,
    seed: int = 0,
    *,
    extra_points: Sequence[float] = (),
) -> ArgmaxProbe:
    """Sample the argmax set: the base optimizer, the least/most-informative
    canonical directions, and ``k`` seeded random objectives, each maximised
    over the face where the payoff value is pinned at the optimum."""
    base = solve(u, f0, grid, g0, with_dual=False, extra_points=extra_points)
    pts = base.points
    members = [base.optimizer]
    masses = [base.masses]
    pos_sum = np.maximum(np.subtract.outer(pts, pts), 0.0).sum(axis=0)
    directions = [-pos_sum, pos_sum]
    rng = np.random.default_rng(seed)
    directions.extend(rng.standard_normal(len(pts)) for _ in range(k))
    for d in directions:
        rep = solve(
            u, f0, pts, g0, with_dual=False,
            value_pin=base.value, secondary=np.asarray(d, dtype=float),
        )
        attained = float(rep.payoff_values @ rep.masses)
        if abs(attained - base.value) > 1e-8 * max(1.0, abs(base.value)):
            raise NumericFailure(
                f"probe member misses the optimal value by {attained - base.value:.2e}"
            )
        if not any(np.allclose(rep.masses, m, atol=1e-10) for m in masses):
            members.append(rep.optimizer)
            masses.append(rep.masses)
    return ArgmaxProbe(
        value=base.value,
        members=members,
        member_masses=masses,
        points=pts,
        prior=f0,
        payoff=u,
        floor=g0,
        seed=seed,
    )
