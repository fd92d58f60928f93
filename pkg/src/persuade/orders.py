"""Interval-dominance machinery and weak-set-order comparisons.

Two payoffs are compared through their argmax sets: a probe of each argmax
is sampled by the solver, and for every sampled member the existence of a
counterpart (more informative on one side, less on the other) is decided
exactly by an interval-constrained LP at grid scale.  The pooling and
spreading constructions transform optimizers without losing optimality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ._envelope import Piece, convex_minorant
from .errors import NotComparable, NotRegular
from .measures import (
    Distribution,
    GridSpec,
    envelope_to_distribution,
    integrated_cdf,
    less_informative,
    _diff_quads,
    _quad_roots,
)
from .payoffs import (
    Payoff,
    check_regular,
    curvature_intervals,
    restricted_convex_envelope,
    _poly_range,
)
from .solver import ArgmaxProbe, probe_argmax, solve

__all__ = [
    "IntervalFamily",
    "WsoVerdict",
    "DominanceResult",
    "interval_family",
    "interval_dominance_check",
    "probe_pair",
    "wso_compare",
    "pool_concave",
    "spread_convex",
]


def probe_pair(
    u: Payoff,
    v: Payoff,
    f0: Distribution,
    grid: GridSpec | None = None,
    g0: Distribution | None = None,
    k: int = 8,
    seed: int = 0,
) -> tuple[ArgmaxProbe, ArgmaxProbe]:
    """Argmax probes for two payoffs on one shared working grid (both
    payoffs' breakpoints included), as wso_compare requires."""
    extra = np.concatenate([u.breakpoints, v.breakpoints])
    pu = probe_argmax(u, f0, grid, g0=g0, k=k, seed=seed, extra_points=extra)
    pv = probe_argmax(v, f0, pu.points, g0=g0, k=k, seed=seed + 1)
    return pu, pv


@dataclass(frozen=True)
class IntervalFamily:
    """Maximal intervals where the two integrated CDFs separate strictly
    inside and agree at the endpoints."""

    intervals: tuple[tuple[float, float], ...]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


@dataclass(frozen=True)
class DominanceResult:
    holds: bool
    interval: tuple[float, float] | None = None
    point: float | None = None
    shortfall: float = 0.0

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class WsoVerdict:
    """Weak-set-order comparison of two sampled argmax sets.

    The universal quantifiers run over probe members only (the per-member
    existence checks are exact at grid scale), so a positive verdict is a
    bounded-completeness statement relative to the probes."""

    lower: bool
    strictly_lower: bool
    failures: tuple = ()
    value_first: float = 0.0
    value_second: float = 0.0
    probe_based: bool = True


def interval_family(f: Distribution, h: Distribution, tol: float = 1e-10) -> IntervalFamily:
    """Exact separation intervals of ``C_h - C_f`` (roots of the quadratic
    pieces in closed form)."""
    if not less_informative(f, h, tol=tol):
        raise NotComparable("first argument is not a contraction of the second")
    cf, ch = integrated_cdf(f), integrated_cdf(h)
    knots, quads = _diff_quads(cf, ch)
    cuts = [float(knots[0])]
    for i, (d0, d1, d2) in enumerate(quads):
        h_len = knots[i + 1] - knots[i]
        cuts.extend(float(knots[i] + t) for t in _quad_roots(d0, d1, d2, h_len))
        cuts.append(float(knots[i + 1]))
    diff = lambda x: float(ch(x) - cf(x))  # noqa: E731
    out: list[tuple[float, float]] = []
    open_at: float | None = None
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 1e-15:
            continue
        positive = diff(0.5 * (a + b)) > tol
        if positive:
            if open_at is None:
                open_at = a
            elif diff(a) <= tol:  # isolated touch splits the interval
                out.append((open_at, a))
                open_at = a
        elif open_at is not None:
            out.append((open_at, a))
            open_at = None
    if open_at is not None:
        out.append((open_at, cuts[-1]))
    return IntervalFamily(tuple(out))


def _support_in(h: Distribution, lo: float, hi: float) -> list:
    """Support of ``h`` inside [lo, hi] as points and intervals."""
    out: list = [x for x, _ in h.atoms if lo <= x <= hi]
    for a, b, _ in h.uniforms:
        left, right = max(a, lo), min(b, hi)
        if right > left:
            out.append((left, right))
    return out


def interval_dominance_check(
    u: Payoff, f: Distribution, h: Distribution, tol: float = 1e-8
) -> DominanceResult:
    """Whether no distribution between ``f`` and ``h`` beats ``h`` for ``u``:
    on every separation interval, the convex envelope of ``u`` restricted to
    the support of ``h`` must majorise ``u``."""
    fam = interval_family(f, h)
    for lo, hi in fam:
        domain = _support_in(h, lo, hi)
        if not domain:
            continue
        env = restricted_convex_envelope(u, domain)
        worst_x, worst = _envelope_shortfall(env, u)
        if worst < -tol:
            return DominanceResult(
                False, interval=(lo, hi), point=worst_x, shortfall=float(worst)
            )
    return DominanceResult(True)


def _envelope_shortfall(env, u: Payoff) -> tuple[float, float]:
    """Most negative value of ``env - u`` over the envelope's domain."""
    worst_x, worst = env.lo, 0.0
    for seg in env.segments:
        if seg.kind == "contact":
            continue  # envelope equals the payoff on contact runs
        a, b = seg.slope, seg.value_lo - seg.slope * seg.lo
        for s_lo, s_hi, c, _ in u.segments:
            left, right = max(s_lo, seg.lo), min(s_hi, seg.hi)
            if right <= left:
                continue
            dpoly = P.polysub((b, a), c)
            lo_v, _ = _poly_range(dpoly, left, right)
            if lo_v < worst:
                worst = lo_v
                worst_x = _argmin_poly(dpoly, left, right)
    for bp in u.breakpoints[1:-1]:
        if env.lo <= bp <= env.hi:
            gap = float(env(bp)) - u.eval(bp)
            if gap < worst:
                worst, worst_x = gap, float(bp)
    return worst_x, worst


def _argmin_poly(coeffs, lo: float, hi: float) -> float:
    cand = [lo, hi]
    d = P.polyder(coeffs) if len(coeffs) > 1 else np.array([0.0])
    if len(d) > 1 and np.max(np.abs(d)) > 0:
        for r in np.roots(np.asarray(d)[::-1]):
            if abs(r.imag) < 1e-12 and lo < r.real < hi:
                cand.append(float(r.real))
    vals = [float(P.polyval(x, coeffs)) for x in cand]
    return float(cand[int(np.argmin(vals))])


def wso_compare(
    first: ArgmaxProbe,
    second: ArgmaxProbe,
    tol: float = 1e-7,
    check_strict: bool = True,
) -> WsoVerdict:
    """Is the first argmax (sampled) lower than the second in informativeness?

    For each member F of the first probe, some second-payoff optimizer must
    be more informative than F: the maximum of the second payoff over
    [F, prior] must attain the second optimum.  Symmetrically each member G
    of the second probe must dominate some first-payoff optimizer: the
    maximum of the first payoff over [floor, G] must attain the first
    optimum.  Strictness additionally requires the reversed comparison to
    fail."""
    if len(first.points) != len(second.points) or not np.allclose(
        first.points, second.points
    ):
        raise NotComparable("probes were sampled on different grids")
    failures = _one_sided_failures(first, second, tol)
    lower = not failures
    strictly = False
    if lower and check_strict:
        reversed_failures = _one_sided_failures(second, first, tol)
        strictly = bool(reversed_failures)
    return WsoVerdict(
        lower=lower,
        strictly_lower=strictly,
        failures=tuple(failures),
        value_first=first.value,
        value_second=second.value,
    )


def _one_sided_failures(low: ArgmaxProbe, high: ArgmaxProbe, tol: float) -> list:
    """Violations of: low's members all dominated within high's argmax, and
    high's members all dominate something in low's argmax."""
    failures = []
    scale = max(1.0, abs(high.value), abs(low.value))
    for i, member in enumerate(low.members):
        best = solve(
            high.payoff, high.prior, low.points, g0=member, with_dual=False
        ).value
        if best < high.value - tol * scale:
            failures.append(("no-dominating-member-above", i, high.value - best))
    floor = low.floor
    for i, member in enumerate(high.members):
        if floor is not None and not less_informative(floor, member, tol=1e-7):
            failures.append(("member-below-floor", i, 0.0))
            continue
        best = solve(
            low.payoff, member, low.points, g0=floor, with_dual=False
        ).value
        if best < low.value - tol * scale:
            failures.append(("no-dominated-member-below", i, low.value - best))
    return failures


def pool_concave(g: Distribution, u: Payoff) -> Distribution:
    """Pool the conditional distribution over every maximal concavity
    interval of the payoff at its conditional mean; the result is a
    contraction of ``g`` with the same mean and no lower expected payoff."""
    rep = check_regular(u)
    if not rep:
        raise NotRegular(rep.reason)
    out = g
    for a, b in curvature_intervals(u, "concave"):
        out = out.pool_interval(a, b)
    return out


def spread_convex(h: Distribution, v: Payoff, f0: Distribution) -> Distribution:
    """Spread mass over every maximal convexity interval of the payoff as far
    as the prior allows: the integrated CDF of the result is the convex
    envelope of the prior's curve on those intervals and the optimizer's
    curve elsewhere."""
    rep = check_regular(v)
    if not rep:
        raise NotRegular(rep.reason)
    if not less_informative(h, f0, tol=1e-7):
        raise NotComparable("optimizer is not a contraction of the prior")
    convex_iv = curvature_intervals(v, "convex")
    if not convex_iv:
        return h
    ch, c0 = integrated_cdf(h), integrated_cdf(f0)
    cuts = sorted(
        set([0.0, 1.0])
        | {float(k) for k in ch.knots}
        | {float(k) for k in c0.knots}
        | {e for iv in convex_iv for e in iv}
    )
    pieces: list[Piece] = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 1e-15:
            continue
        mid = 0.5 * (a + b)
        inside = any(lo - 1e-12 <= mid <= hi + 1e-12 for lo, hi in convex_iv)
        src = c0 if inside else ch
        i = int(np.searchsorted(src.knots, mid, side="right") - 1)
        i = min(max(i, 0), len(src.coeffs) - 1)
        q = src.local_quad(i, a)
        pieces.append(_piece_from_quad(a, b, q))
    env = convex_minorant(pieces)
    snap = [p.lo for p in pieces] + [pieces[-1].hi]
    return envelope_to_distribution(env, snap_points=snap)


def _piece_from_quad(a: float, b: float, coeffs) -> Piece:
    c0, c1, c2 = coeffs

    def fn(x, a=a, c0=c0, c1=c1, c2=c2):
        d = np.asarray(x, dtype=float) - a
        return c0 + d * (c1 + d * c2)

    return Piece(a, b, fn, payload=("quad", a, (c0, c1, c2)))
