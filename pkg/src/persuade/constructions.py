"""Constructive objects: binary-prior closed forms, two-point priors that
reverse the argmax order when the ordinal convexity order fails, and
crater-violation counterexamples with their verification pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from ._envelope import concave_majorant, Piece
from .errors import (
    ConstructionFailure,
    DomainError,
    InvalidWitness,
    NotAViolation,
    NotRegular,
)
from .measures import Distribution, GridSpec, conditional_mean, integrated_cdf
from .payoffs import (
    Affine,
    ChordWitness,
    Payoff,
    check_crater,
    check_regular,
    concave_envelope,
    is_ordinally_less_convex,
    reflect,
    tangent,
    _poly_range,
    _stretch_ending_at,
    _stretch_starting_at,
    _verify_chord_witness,
)
from .solver import expectation, solve, upper_censorship_solve
from .measures import upper_censorship

GAP_TOL = 1e-9

__all__ = [
    "BinarySolution",
    "TwoPointCounterexample",
    "CraterCounterexample",
    "binary_solve",
    "binary_order_check",
    "two_point_counterexample",
    "crater_counterexample",
    "verify_counterexample",
]


# ---------------------------------------------------------------------------
# binary priors: closed form through the concave envelope
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinarySolution:
    """Optimal-value structure under an (effectively) binary prior with the
    given mean: the maximal affine stretch ``[lo, hi]`` of the concave
    envelope around the mean, the contact set inside it, and the least/most
    informative representative optimizers."""

    mean: float
    lo: float
    hi: float
    inner_lo: float   # sup of the contact set at or below the mean
    inner_hi: float   # inf of the contact set at or above the mean
    contact: tuple[tuple[float, float], ...]
    least: Distribution
    most: Distribution
    value: float


def _two_point(mean: float, a: float, b: float) -> Distribution:
    if b - a <= 1e-12:
        return Distribution.point(mean)
    w = (b - mean) / (b - a)
    if w <= 0.0:
        return Distribution.point(b)
    if w >= 1.0:
        return Distribution.point(a)
    return Distribution.two_point(a, b, w)


def _affine_like(env_seg, u: Payoff, slope: float, tol: float) -> bool:
    """Whether an envelope segment continues the affine stretch of slope
    ``slope``: a chord with that slope, or contact on an affine piece with
    that slope."""
    if env_seg.hi - env_seg.lo <= 1e-12:
        return True
    if env_seg.kind == "chord":
        return abs(env_seg.slope - slope) <= tol
    payload = env_seg.payload
    if payload is not None and payload[0] == "seg":
        lo, hi, c, kind = u.segments[payload[1]]
        if kind == "affine":
            s = float(P.polyval(0.5 * (env_seg.lo + env_seg.hi), P.polyder(c)))
            return abs(s - slope) <= tol
    return False


def binary_solve(u: Payoff, mu: float) -> BinarySolution:
    """Closed-form optimum for a prior whose support brackets ``mu`` freely:
    the value is the concave envelope at ``mu``; the optimizers are the
    mean-``mu`` distributions supported on the contact set of the maximal
    affine stretch around ``mu``."""
    if not 0.0 < mu < 1.0:
        raise DomainError("mean must be interior")
    ce = concave_envelope(u)
    env = ce.env
    seg = env.segment_at(mu)
    scale = max(1.0, max(abs(v) for s in u.segments for v in s[2]))
    tol_s = 1e-9 * scale

    degenerate = False
    if seg.kind == "contact" and seg.payload is not None and seg.payload[0] == "seg":
        if u.segments[seg.payload[1]][3] != "affine":
            degenerate = True  # envelope strictly concave at the mean
    if degenerate:
        d = Distribution.point(mu)
        return BinarySolution(mu, mu, mu, mu, mu, ((mu, mu),), d, d, u.eval(mu))

    slope = seg.slope
    idx = env.segments.index(seg)
    lo_i = idx
    while lo_i > 0 and _affine_like(env.segments[lo_i - 1], u, slope, tol_s):
        lo_i -= 1
    hi_i = idx
    while hi_i + 1 < len(env.segments) and _affine_like(env.segments[hi_i + 1], u, slope, tol_s):
        hi_i += 1
    lo, hi = env.segments[lo_i].lo, env.segments[hi_i].hi

    # anchor the line on the payoff itself
    v_lo, v_hi = u.eval(lo), u.eval(hi)
    line = (
        Affine(at=lo, value=v_lo, slope=(v_hi - v_lo) / (hi - lo))
        if hi > lo
        else Affine(at=lo, value=v_lo, slope=u.deriv(lo))
    )

    contact = _contact_set(u, line, lo, hi, tol=GAP_TOL * scale)
    inner_lo = max((min(q, mu) for p, q in contact if p <= mu), default=lo)
    inner_hi = min((max(p, mu) for p, q in contact if q >= mu), default=hi)
    value = float(line(mu))
    return BinarySolution(
        mean=mu,
        lo=lo,
        hi=hi,
        inner_lo=inner_lo,
        inner_hi=inner_hi,
        contact=tuple(contact),
        least=_two_point(mu, inner_lo, inner_hi),
        most=_two_point(mu, lo, hi),
        value=value,
    )


def _contact_set(
    u: Payoff, line: Affine, lo: float, hi: float, tol: float
) -> list[tuple[float, float]]:
    """Closed subsets of [lo, hi] where the affine majorant touches the
    payoff: whole stretches where the gap polynomial vanishes, otherwise
    isolated minima of the gap."""
    out: list[tuple[float, float]] = []

    def push(a: float, b: float) -> None:
        if out and a <= out[-1][1] + 1e-12:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))

    line_coeffs = (line.value - line.slope * line.at, line.slope)
    for s_lo, s_hi, c, _ in u.segments:
        left, right = max(s_lo, lo), min(s_hi, hi)
        if right <= left:
            continue
        gap = P.polysub(line_coeffs, c)
        g_min, g_max = _poly_range(gap, left, right)
        if g_max <= tol:
            push(left, right)
            continue
        cand = [left, right]
        d = P.polyder(gap)
        if len(d) > 1 or abs(d[0]) > 0:
            if np.max(np.abs(d)) > 0 and len(d) > 1:
                for r in np.roots(np.asarray(d)[::-1]):
                    if abs(r.imag) < 1e-12 and left < r.real < right:
                        cand.append(float(r.real))
        for t in cand:
            if abs(float(P.polyval(t, gap))) <= tol:
                push(t, t)
    # breakpoint values are maxima of one-sided limits: covered by the
    # per-side endpoint candidates above
    return out


@dataclass(frozen=True)
class BinaryOrderReport:
    ok: bool
    failed: tuple[str, ...] = ()
    first: BinarySolution | None = None
    second: BinarySolution | None = None

    def __bool__(self) -> bool:
        return self.ok


def binary_order_check(u: Payoff, v: Payoff, mu: float, tol: float = 1e-7) -> BinaryOrderReport:
    """Under a binary prior, the representative optimizers must be ordered:
    the more convex payoff's most-informative optimizer spreads at least as
    wide, and its least-informative one no less wide."""
    bu, bv = binary_solve(u, mu), binary_solve(v, mu)
    failed = []
    if bv.lo > bu.lo + tol:
        failed.append("outer-left")
    if bu.hi > bv.hi + tol:
        failed.append("outer-right")
    if bv.inner_lo > bu.inner_lo + tol:
        failed.append("inner-left")
    if bu.inner_hi > bv.inner_hi + tol:
        failed.append("inner-right")
    return BinaryOrderReport(ok=not failed, failed=tuple(failed), first=bu, second=bv)


# ---------------------------------------------------------------------------
# two-point priors reversing the argmax order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoPointCounterexample:
    """A two-point prior on the witness chord under which the less-convex
    payoff's argmax is strictly higher than the more-convex one's."""

    prior: Distribution
    case: str  # "chord-holds" | "chord-fails"
    witness: ChordWitness
    mean: float


def two_point_counterexample(u: Payoff, v: Payoff, witness: ChordWitness) -> TwoPointCounterexample:
    """Build the order-reversing prior from a certified failure of the
    ordinal convexity comparison.

    When the chord inequality for the second payoff holds weakly at the
    witness weight (only strictness failed to transfer), the prior sits at
    the witness weight itself: the endpoints-prior is optimal for the first
    payoff while pooling everything is optimal for the second.  Otherwise
    the prior is placed where the concave envelope of the second payoff
    restricted to the chord is exposed (non-affine), making pooling uniquely
    optimal for the second payoff."""
    if not _verify_chord_witness(u, v, witness):
        raise InvalidWitness("witness failed exact re-verification")
    x, z, alpha = witness.x, witness.z, witness.alpha
    m = witness.midpoint
    gap_v = alpha * v.eval(x) + (1 - alpha) * v.eval(z) - v.eval(m)
    if gap_v >= 0.0:
        return TwoPointCounterexample(
            prior=Distribution.two_point(x, z, alpha),
            case="chord-holds",
            witness=witness,
            mean=m,
        )
    m2 = _exposed_point(v, x, z)
    w = (z - m2) / (z - x)
    return TwoPointCounterexample(
        prior=Distribution.two_point(x, z, w),
        case="chord-fails",
        witness=witness,
        mean=m2,
    )


def _exposed_point(v: Payoff, x: float, z: float) -> float:
    """A point of (x, z) where the concave envelope of the restriction of
    ``v`` touches ``v`` and is not affine on any neighbourhood."""
    pieces = []
    for s_lo, s_hi, c, _ in v.segments:
        left, right = max(s_lo, x), min(s_hi, z)
        if right >= left:
            pieces.append(
                Piece(left, right, lambda q, c=c: P.polyval(np.asarray(q, dtype=float), c))
            )
    env = concave_majorant(pieces)
    margin = 1e-6 * (z - x)
    # a contact kink (slope drop between adjacent envelope pieces)
    for i in range(len(env.segments) - 1):
        a, b = env.segments[i], env.segments[i + 1]
        if x + margin < a.hi < z - margin and a.slope - b.slope > 1e-9:
            return float(a.hi)
    # otherwise a contact run on a strictly concave stretch
    for seg in env.segments:
        if seg.kind == "contact" and seg.hi - seg.lo > 4 * margin:
            mid = 0.5 * (seg.lo + seg.hi)
            if x + margin < mid < z - margin:
                return float(mid)
    raise ConstructionFailure("no exposed envelope point inside the chord")


# ---------------------------------------------------------------------------
# crater-violation counterexamples
# ---------------------------------------------------------------------------


@dataclass
class CraterCounterexample:
    """Everything needed to exhibit failing comparative statics at a crater
    violation: the two-sided tangent support function, the atomless prior
    with prescribed conditional means, the more-convex payoff variant, and
    its optimizer, which pools across the crossing point."""

    case: str  # "tangent-pair" | "affine-tail"
    left_end: float          # support starts here
    left_tangency: float
    crossing_x: float
    crossing_y: float
    right_tangency: float
    right_end: float         # support ends here
    pattern: tuple[float, float, float, float]  # concave | convex | concave
    support_left: Affine
    support_right: Affine
    prior: Distribution
    payoff: Payoff
    variant: Payoff
    optimizer: Distribution
    pool_cutoff: tuple[float, float]
    checks: dict = field(default_factory=dict)

    @property
    def support_slopes(self) -> tuple[float, float]:
        return (self.support_left.slope, self.support_right.slope)

    def support_value(self, m):
        return np.maximum(self.support_left(m), self.support_right(m))


def _is_affine_on(u: Payoff, a: float, b: float) -> bool:
    return all(
        k == "affine"
        for lo, hi, _, k in u.segments
        if min(hi, b) - max(lo, a) > 1e-12
    )


def _tangent_reaches(u: Payoff, x: float, target: float) -> float:
    """Tangent value at ``target`` minus the payoff there."""
    t = tangent(u, x)
    return float(t(target)) - u.eval(target)


def _bisect(fn, lo: float, hi: float, tol: float = 1e-13) -> float:
    f_lo = fn(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if hi - lo < tol:
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _support_dominates(u: Payoff, left: Affine, right: Affine, a: float, b: float,
                       crossing: float, tol: float = 1e-10) -> bool:
    """max(left, right) >= u on [a, b], checked per polynomial segment."""
    for seg_lo, seg_hi, c, _ in u.segments:
        for line, lo_r, hi_r in ((left, a, crossing), (right, crossing, b)):
            lo_c, hi_c = max(seg_lo, lo_r), min(seg_hi, hi_r)
            if hi_c <= lo_c:
                continue
            line_coeffs = (line.value - line.slope * line.at, line.slope)
            g_min, _ = _poly_range(P.polysub(line_coeffs, c), lo_c, hi_c)
            if g_min < -tol:
                return False
    return True


def _four_segment_prior(xp: float, x: float, X: float, w: float, wp: float) -> Distribution:
    """Atomless prior with support [xp, wp], mean X, and conditional means
    exactly ``x`` below the crossing and ``w`` above it."""
    side = (w - X) / (w - x)                 # mass below the crossing
    lam = (X - x) / (X - xp)                 # left mixture weight
    rho = (wp - w) / (wp - X)                # right mixture weight
    return Distribution.make(
        uniforms=[
            (xp, x, side * lam),
            (x, X, side * (1.0 - lam)),
            (X, w, (1.0 - side) * rho),
            (w, wp, (1.0 - side) * (1.0 - rho)),
        ]
    )


def _convexify_below(u: Payoff, X: float, kappa_cap: float = 2.0**40) -> Payoff:
    """Replace the payoff below ``X`` by the tangent there plus a quadratic
    bump, doubling the curvature until the variant dominates the payoff."""
    uX, sX = u.eval(X), u.deriv(X)
    kappa = 1.0
    grid = np.linspace(0.0, X, 1001)
    base = uX - sX * X
    u_grid = u.values(grid)
    while kappa <= kappa_cap:
        quad = (base + kappa * X * X, sX - 2.0 * kappa * X, kappa)
        # cheap grid check first, exact re-check after
        if np.all(P.polyval(grid, quad) >= u_grid - 1e-12):
            ok = True
            for s_lo, s_hi, c, _ in u.segments:
                lo_c, hi_c = max(s_lo, 0.0), min(s_hi, X)
                if hi_c <= lo_c:
                    continue
                g_min, _ = _poly_range(P.polysub(quad, c), lo_c, hi_c)
                if g_min < -1e-10:
                    ok = False
                    break
            if ok:
                break
        kappa *= 2.0
    else:
        raise ConstructionFailure("curvature cap reached while dominating the payoff")
    segs = [(0.0, X, quad, "convex")]
    for lo, hi, c, k in u.segments:
        if hi <= X + 1e-12:
            continue
        segs.append((max(lo, X), hi, c, k))
    return Payoff.make(segs)


def crater_counterexample(u: Payoff, grid: GridSpec | None = None) -> CraterCounterexample:
    """From a crater-property violation, construct the prior, the ordinally
    more convex payoff variant, and the variant's optimizer that pools mass
    across the tangent crossing."""
    rep = check_regular(u)
    if not rep:
        raise NotRegular(rep.reason)
    cr = check_crater(u)
    if cr.holds:
        raise NotAViolation("payoff satisfies the crater property")
    wit = cr.witness
    y, z = wit.y, wit.z
    xbar = _stretch_ending_at(u, y)
    wbar = _stretch_starting_at(u, z)
    if xbar is None or wbar is None:
        raise ConstructionFailure("violation pattern has no concave stretches")
    left_affine = _is_affine_on(u, xbar, y)
    right_affine = _is_affine_on(u, z, wbar)
    if left_affine and right_affine:
        raise ConstructionFailure("both stretches affine cannot violate")
    if left_affine:
        return _reflect_counterexample(crater_counterexample(reflect(u), grid))
    if right_affine:
        return _build_affine_tail(u, xbar, y, z, wbar, wit, grid)
    return _build_tangent_pair(u, xbar, y, z, wbar, wit, grid)


def _candidate_ladder(lo: float, hi: float) -> list[float]:
    return [lo + t * (hi - lo) for t in (0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.9)]


def _build_tangent_pair(u, xbar, y, z, wbar, wit, grid) -> CraterCounterexample:
    x0 = min(max(wit.x, xbar), y)
    w0 = min(max(wit.w, z), wbar)

    xs = []
    if _tangent_reaches(u, x0, z) > 1e-10:
        root = _bisect(lambda s: _tangent_reaches(u, s, z), x0, y)
        xs.append(root)
    xs.extend(_candidate_ladder(max(x0, xbar), y))
    ws = []
    if _tangent_reaches(u, w0, y) > 1e-10:
        root = _bisect(lambda s: _tangent_reaches(u, s, y), z, w0)
        ws.append(root)
    ws.extend(_candidate_ladder(z, min(w0, wbar))[::-1])

    for x in xs:
        if not xbar + 1e-9 < x < y:
            continue
        t_x = tangent(u, x)
        for w in ws:
            if not z < w < wbar - 1e-9:
                continue
            t_w = tangent(u, w)
            if t_w.slope - t_x.slope <= 1e-10:
                continue
            X = (
                t_w.value - t_w.slope * t_w.at - t_x.value + t_x.slope * t_x.at
            ) / (t_x.slope - t_w.slope)
            Y = float(t_x(X))
            if not (y - 1e-12 <= X <= z + 1e-12) or Y <= u.eval(X) + 1e-10:
                continue
            if not (x < X < w):
                continue
            xp = 0.5 * (xbar + x)
            wp = 0.5 * (w + wbar)
            if not _support_dominates(u, t_x, t_w, xp, wp, X):
                continue
            return _finish_tangent_pair(u, xbar, y, z, wbar, xp, x, X, Y, w, wp,
                                        t_x, t_w, grid)
    raise ConstructionFailure("no valid tangency pair found in the violation pattern")


def _finish_tangent_pair(u, xbar, y, z, wbar, xp, x, X, Y, w, wp, t_x, t_w, grid):
    prior = _four_segment_prior(xp, x, X, w, wp)
    variant = _convexify_below(u, X)
    v_rep = check_regular(variant)
    if not v_rep:
        raise ConstructionFailure(f"variant not regular: {v_rep.reason}")
    a, b, optimizer = upper_censorship_solve(variant, prior)
    cx = CraterCounterexample(
        case="tangent-pair",
        left_end=xp,
        left_tangency=x,
        crossing_x=X,
        crossing_y=Y,
        right_tangency=w,
        right_end=wp,
        pattern=(xbar, y, z, wbar),
        support_left=t_x,
        support_right=t_w,
        prior=prior,
        payoff=u,
        variant=variant,
        optimizer=optimizer,
        pool_cutoff=(a, b),
    )
    _validate_counterexample(cx, grid)
    return cx


def _build_affine_tail(u, xbar, y, z, wbar, wit, grid) -> CraterCounterexample:
    sigma = u.deriv(z)  # slope of the affine tail
    uz = u.eval(z)
    best = None
    for x in _candidate_ladder(xbar, y):
        t_x = tangent(u, x)
        if t_x.slope >= sigma - 1e-10:
            continue
        if float(t_x(z)) <= uz + 1e-12:
            continue
        X = (uz - sigma * z - t_x.value + t_x.slope * t_x.at) / (t_x.slope - sigma)
        margin = min(X - z, wbar - X)
        if margin <= 1e-6:
            continue
        if best is None or margin > best[0]:
            best = (margin, x, X, t_x)
    if best is None:
        raise ConstructionFailure("no tangent crossing the affine tail inside it")
    _, x, X, t_x = best
    wp = wbar
    w = 0.5 * (X + wp)
    xp = 0.5 * (xbar + x)
    t_w = Affine(at=w, value=u.eval(w), slope=sigma)
    if not _support_dominates(u, t_x, t_w, xp, wp, X):
        raise ConstructionFailure("support function fails to dominate")

    prior = _four_segment_prior(xp, x, X, w, wp)
    variant = _affine_tail_variant(z, wp)
    a = conditional_mean(prior, z, 1.0)
    optimizer = upper_censorship(prior, z)
    cx = CraterCounterexample(
        case="affine-tail",
        left_end=xp,
        left_tangency=x,
        crossing_x=X,
        crossing_y=float(t_x(X)),
        right_tangency=w,
        right_end=wp,
        pattern=(xbar, y, z, wbar),
        support_left=t_x,
        support_right=t_w,
        prior=prior,
        payoff=u,
        variant=variant,
        optimizer=optimizer,
        pool_cutoff=(z, a),
    )
    _validate_counterexample(cx, grid)
    return cx


def _affine_tail_variant(z: float, wp: float) -> Payoff:
    """Regular, globally convex variant: strictly convex off [z, wp] and
    flat on it (slopes -2(z-m), 0, 2(m-wp) are non-decreasing)."""
    segs = [(0.0, z, (z * z, -2.0 * z, 1.0), "convex"), (z, wp, (0.0,), "affine")]
    if wp < 1.0 - 1e-12:
        segs.append((wp, 1.0, (wp * wp, -2.0 * wp, 1.0), "convex"))
    return Payoff.make(segs)


def _validate_counterexample(cx: CraterCounterexample, grid: GridSpec | None) -> None:
    checks = cx.checks
    prior_c = integrated_cdf(cx.prior)
    opt_c = integrated_cdf(cx.optimizer)
    X = cx.crossing_x
    checks["prior_mean_gap"] = abs(cx.prior.mean - X)
    checks["left_conditional_gap"] = abs(
        conditional_mean(cx.prior, 0.0, X) - cx.left_tangency
    )
    checks["right_conditional_gap"] = abs(
        conditional_mean(cx.prior, X, 1.0) - cx.right_tangency
    )
    checks["curve_separation"] = float(prior_c(X) - opt_c(X))
    checks["variant_dominates"] = float(
        min(
            _poly_range(
                P.polysub(
                    tuple(cx.variant.segments[0][2]),
                    (0.0,),
                ),
                0.0,
                0.0,
            )[0],
            0.0,
        )
    )
    olc = is_ordinally_less_convex(cx.payoff, cx.variant)
    checks["ordinally_less_convex"] = bool(olc.holds)
    if checks["prior_mean_gap"] > 1e-10:
        raise ConstructionFailure("prior mean misses the crossing")
    if checks["left_conditional_gap"] > 1e-9 or checks["right_conditional_gap"] > 1e-9:
        raise ConstructionFailure("conditional means miss the tangency points")
    if checks["curve_separation"] <= 1e-9:
        raise ConstructionFailure("optimizer does not pool across the crossing")
    if not olc.holds:
        raise ConstructionFailure(
            f"variant is not ordinally more convex (witness {olc.witness})"
        )


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    value: float
    curve_min: float
    curve_max: float
    prior_curve: float
    optimizer_curve: float

    def __bool__(self) -> bool:
        return self.passed


def verify_counterexample(
    cx: CraterCounterexample, grid: GridSpec | None = None, tol: float = 1e-6
) -> VerificationReport:
    """Check the separating property at grid scale: every optimizer of the
    original payoff keeps the full prior curve at the crossing (splits no
    mass across it), while the stored variant optimizer pools across it."""
    s_lo, s_hi = cx.support_slopes
    if not s_lo < s_hi - 1e-12:
        raise DomainError("support function is affine: the construction's premise fails")
    X = cx.crossing_x
    extra = [X, cx.left_end, cx.left_tangency, cx.right_tangency, cx.right_end]
    base = solve(cx.payoff, cx.prior, grid, with_dual=False, extra_points=extra)
    pos_x = np.maximum(X - base.points, 0.0)
    lo_rep = solve(
        cx.payoff, cx.prior, base.points, with_dual=False,
        value_pin=base.value, secondary=-pos_x,
    )
    hi_rep = solve(
        cx.payoff, cx.prior, base.points, with_dual=False,
        value_pin=base.value, secondary=pos_x,
    )
    c_lo = float(pos_x @ lo_rep.masses)
    c_hi = float(pos_x @ hi_rep.masses)
    c0 = float(integrated_cdf(cx.prior)(X))
    c_opt = float(integrated_cdf(cx.optimizer)(X))
    passed = abs(c_lo - c0) <= tol and abs(c_hi - c0) <= tol and c_opt < c0 - tol
    return VerificationReport(
        passed=passed,
        value=base.value,
        curve_min=c_lo,
        curve_max=c_hi,
        prior_curve=c0,
        optimizer_curve=c_opt,
    )


def _reflect_distribution(d: Distribution) -> Distribution:
    return Distribution.make(
        atoms=[(1.0 - x, w) for x, w in d.atoms],
        uniforms=[(1.0 - b, 1.0 - a, w) for a, b, w in d.uniforms],
    )


def _reflect_affine(a: Affine) -> Affine:
    return Affine(at=1.0 - a.at, value=a.value, slope=-a.slope)


def _reflect_counterexample(cx: CraterCounterexample) -> CraterCounterexample:
    a, b = cx.pool_cutoff
    xb, yb, zb, wb = cx.pattern
    return CraterCounterexample(
        case=cx.case + "-reflected",
        left_end=1.0 - cx.right_end,
        left_tangency=1.0 - cx.right_tangency,
        crossing_x=1.0 - cx.crossing_x,
        crossing_y=cx.crossing_y,
        right_tangency=1.0 - cx.left_tangency,
        right_end=1.0 - cx.left_end,
        pattern=(1.0 - wb, 1.0 - zb, 1.0 - yb, 1.0 - xb),
        support_left=_reflect_affine(cx.support_right),
        support_right=_reflect_affine(cx.support_left),
        prior=_reflect_distribution(cx.prior),
        payoff=reflect(cx.payoff),
        variant=reflect(cx.variant),
        optimizer=_reflect_distribution(cx.optimizer),
        pool_cutoff=(1.0 - b, 1.0 - a),
        checks=dict(cx.checks),
    )
