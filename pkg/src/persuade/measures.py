"""Distributions on [0, 1] and the informativeness order.

A distribution is an exact finite mixture of point atoms and uniform-density
segments.  Its integrated CDF ``C(x) = integral of the CDF from 0 to x`` is
an exact piecewise quadratic, and all order comparisons (mean-preserving
contraction, lattice join/meet) are carried out on these quadratics at knots
plus interior extrema, with no sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._envelope import Piece, convex_minorant
from .errors import DomainError, MeanMismatch, NullEvent

# Construction-time mass/mean equality.
MASS_TOL = 1e-12
# Informativeness comparisons downstream of the LP.
ORDER_TOL = 1e-9

__all__ = [
    "Distribution",
    "IntegratedCdf",
    "GridSpec",
    "OrderResult",
    "integrated_cdf",
    "less_informative",
    "join",
    "meet",
    "conditional_mean",
    "upper_censorship",
    "discretize",
    "project_masses",
]


@dataclass(frozen=True)
class Distribution:
    """Mixture of atoms ``(location, mass)`` and uniforms ``(left, right, mass)``.

    Immutable; build through :meth:`make` (which sorts, merges and validates)
    rather than the raw constructor.
    """

    atoms: tuple[tuple[float, float], ...]
    uniforms: tuple[tuple[float, float, float], ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def make(
        atoms: Iterable[tuple[float, float]] = (),
        uniforms: Iterable[tuple[float, float, float]] = (),
    ) -> "Distribution":
        merged: dict[float, float] = {}
        for x, w in atoms:
            x, w = float(x), float(w)
            if w <= 0.0:
                continue
            merged[x] = merged.get(x, 0.0) + w
        segs = []
        for a, b, w in uniforms:
            a, b, w = float(a), float(b), float(w)
            if w <= 0.0:
                continue
            segs.append((a, b, w))
        segs.sort()
        # canonical form: adjacent segments with equal density become one
        fused: list[tuple[float, float, float]] = []
        for a, b, w in segs:
            if fused:
                pa, pb, pw = fused[-1]
                d_prev, d_cur = pw / (pb - pa), w / (b - a)
                if pb == a and abs(d_prev - d_cur) <= 1e-9 * max(d_prev, d_cur):
                    fused[-1] = (pa, b, pw + w)
                    continue
            fused.append((a, b, w))
        segs = fused
        total = sum(merged.values()) + sum(w for _, _, w in segs)
        if abs(total - 1.0) > 1e-8:
            raise DomainError(f"total mass {total!r} is not 1")
        if total != 1.0:
            merged = {x: w / total for x, w in merged.items()}
            segs = [(a, b, w / total) for a, b, w in segs]
        at = tuple(sorted(merged.items()))
        return Distribution(at, tuple(segs))

    @staticmethod
    def point(x: float) -> "Distribution":
        return Distribution.make(atoms=[(x, 1.0)])

    @staticmethod
    def two_point(x: float, z: float, weight_at_x: float) -> "Distribution":
        if not 0.0 < weight_at_x < 1.0:
            raise DomainError("weight must be interior")
        return Distribution.make(atoms=[(x, weight_at_x), (z, 1.0 - weight_at_x)])

    @staticmethod
    def uniform(a: float = 0.0, b: float = 1.0) -> "Distribution":
        return Distribution.make(uniforms=[(a, b, 1.0)])

    @staticmethod
    def mixture(parts: Sequence[tuple["Distribution", float]]) -> "Distribution":
        atoms, uniforms = [], []
        for dist, w in parts:
            for x, m in dist.atoms:
                atoms.append((x, m * w))
            for a, b, m in dist.uniforms:
                uniforms.append((a, b, m * w))
        return Distribution.make(atoms, uniforms)

    def __post_init__(self) -> None:
        total = 0.0
        prev = -1.0
        for x, w in self.atoms:
            if not (0.0 <= x <= 1.0):
                raise DomainError(f"atom at {x!r} outside [0, 1]")
            if w <= 0.0:
                raise DomainError("atom mass must be positive")
            if x <= prev:
                raise DomainError("atom locations must be strictly increasing")
            prev = x
            total += w
        for a, b, w in self.uniforms:
            if not (0.0 <= a < b <= 1.0):
                raise DomainError(f"degenerate uniform segment ({a!r}, {b!r})")
            if w <= 0.0:
                raise DomainError("segment mass must be positive")
            total += w
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"total mass {total!r} is not 1 within {MASS_TOL}")

    # -- basic functionals -------------------------------------------------

    @property
    def mean(self) -> float:
        m = sum(x * w for x, w in self.atoms)
        m += sum(0.5 * (a + b) * w for a, b, w in self.uniforms)
        return m

    def cdf(self, x: float) -> float:
        """Right-continuous CDF value at ``x``."""
        v = sum(w for loc, w in self.atoms if loc <= x)
        for a, b, w in self.uniforms:
            if x >= b:
                v += w
            elif x > a:
                v += w * (x - a) / (b - a)
        return v

    def mass_between(self, a: float, b: float) -> float:
        """Mass of the closed interval ``[a, b]``."""
        if b < a:
            raise DomainError("empty interval")
        m = sum(w for x, w in self.atoms if a <= x <= b)
        for lo, hi, w in self.uniforms:
            left, right = max(lo, a), min(hi, b)
            if right > left:
                m += w * (right - left) / (hi - lo)
        return m

    def partial_mean(self, a: float, b: float) -> float:
        """Integral of ``x`` over the closed interval ``[a, b]``."""
        s = sum(x * w for x, w in self.atoms if a <= x <= b)
        for lo, hi, w in self.uniforms:
            left, right = max(lo, a), min(hi, b)
            if right > left:
                s += w * (right - left) / (hi - lo) * 0.5 * (left + right)
        return s

    @property
    def support_points(self) -> tuple[float, ...]:
        """Atom locations and segment endpoints, sorted."""
        pts = {x for x, _ in self.atoms}
        for a, b, _ in self.uniforms:
            pts.add(a)
            pts.add(b)
        return tuple(sorted(pts))

    @property
    def is_atomless(self) -> bool:
        return not self.atoms

    # -- surgery -----------------------------------------------------------

    def drop_interval(self, a: float, b: float) -> list:
        """Atom/segment parts outside the closed interval ``[a, b]``
        (unnormalised), as (atoms, uniforms) lists."""
        atoms = [(x, w) for x, w in self.atoms if not a <= x <= b]
        uniforms = []
        for lo, hi, w in self.uniforms:
            dens = w / (hi - lo)
            if lo < a:
                r = min(hi, a)
                uniforms.append((lo, r, dens * (r - lo)))
            if hi > b:
                left = max(lo, b)
                uniforms.append((left, hi, dens * (hi - left)))
        return [atoms, uniforms]

    def pool_interval(self, a: float, b: float) -> "Distribution":
        """Replace the conditional distribution on ``[a, b]`` by a point mass
        at its conditional mean.  No-op when the interval is null."""
        m = self.mass_between(a, b)
        if m <= 0.0:
            return self
        y = self.partial_mean(a, b) / m
        atoms, uniforms = self.drop_interval(a, b)
        atoms.append((y, m))
        return Distribution.make(atoms, uniforms)

    # -- serialisation -------------------------------------------------------

    def as_dict(self) -> dict:
        return {
            "atoms": [{"x": x, "w": w} for x, w in self.atoms],
            "uniforms": [{"from": a, "to": b, "w": w} for a, b, w in self.uniforms],
        }

    @staticmethod
    def from_dict(data: dict) -> "Distribution":
        return Distribution.make(
            atoms=[(d["x"], d["w"]) for d in data.get("atoms", [])],
            uniforms=[(d["from"], d["to"], d["w"]) for d in data.get("uniforms", [])],
        )


@dataclass(frozen=True)
class IntegratedCdf:
    """Exact piecewise-quadratic ``C(x) = integral_0^x F``.

    ``coeffs[i]`` holds ``(value, slope, quad)`` local to the left knot of
    piece ``i``: on ``[knots[i], knots[i+1]]``,
    ``C(x) = value + slope*(x-k) + quad*(x-k)^2``.  ``slope`` is the CDF just
    right of the knot and ``2*quad`` the density on the open piece.
    """

    knots: np.ndarray
    coeffs: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.clip(np.searchsorted(self.knots, x, side="right") - 1, 0, len(self.coeffs) - 1)
        d = x - self.knots[idx]
        c = self.coeffs[idx]
        return c[..., 0] + d * (c[..., 1] + d * c[..., 2])

    def slope_right(self, x: float) -> float:
        """CDF value just right of ``x`` (left limit at 1)."""
        i = int(np.searchsorted(self.knots, x, side="right") - 1)
        i = min(max(i, 0), len(self.coeffs) - 1)
        d = x - self.knots[i]
        return float(self.coeffs[i, 1] + 2.0 * self.coeffs[i, 2] * d)

    @property
    def at_one(self) -> float:
        return float(self(1.0))

    def local_quad(self, i: int, x0: float) -> tuple[float, float, float]:
        """Coefficients of piece ``i`` recentred at ``x0``."""
        v, s, q = self.coeffs[i]
        d = x0 - self.knots[i]
        return (v + d * (s + d * q), s + 2.0 * q * d, q)

    def to_distribution(self, drop_tol: float = 1e-12) -> Distribution:
        """Recover the distribution from the right-derivative (CDF jumps give
        atoms, quadratic pieces give uniform segments)."""
        atoms, uniforms = [], []
        prev_slope = 0.0
        for i in range(len(self.coeffs)):
            k, k2 = self.knots[i], self.knots[i + 1]
            v, s, q = self.coeffs[i]
            jump = s - prev_slope
            if jump > drop_tol:
                atoms.append((k, jump))
            dens = 2.0 * q
            if dens > drop_tol / (k2 - k):
                uniforms.append((k, k2, dens * (k2 - k)))
            prev_slope = s + 2.0 * q * (k2 - k)
        jump = 1.0 - prev_slope
        if jump > drop_tol:
            atoms.append((self.knots[-1], jump))
        return Distribution.make(atoms, uniforms)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``x_i = i/(n-1)`` on [0, 1]."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainError("grid needs at least 3 points")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n)


@dataclass(frozen=True)
class OrderResult:
    """Outcome of an informativeness comparison.  Falsy when the order fails,
    in which case ``witness`` is a point where it does."""

    holds: bool
    witness: float | None = None
    gap: float = 0.0

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def integrated_cdf(dist: Distribution) -> IntegratedCdf:
    """Exact piecewise-quadratic integral of the CDF; knots at every atom
    location and segment endpoint."""
    ks = {0.0, 1.0}
    ks.update(x for x, _ in dist.atoms)
    for a, b, _ in dist.uniforms:
        ks.add(a)
        ks.add(b)
    knots = np.array(sorted(ks))
    m = len(knots) - 1
    coeffs = np.empty((m, 3))
    value = 0.0
    for i in range(m):
        k, k2 = knots[i], knots[i + 1]
        slope = dist.cdf(k)  # right-continuous: CDF on the open piece
        dens = sum(w / (b - a) for a, b, w in dist.uniforms if a <= k and k2 <= b)
        coeffs[i] = (value, slope, 0.5 * dens)
        h = k2 - k
        value += slope * h + 0.5 * dens * h * h
    return IntegratedCdf(knots, coeffs)


def _merged_knots(ca: IntegratedCdf, cb: IntegratedCdf, extra=()) -> np.ndarray:
    ks = np.unique(np.concatenate([ca.knots, cb.knots, np.asarray(extra, dtype=float)]))
    # collapse near-duplicates from independently constructed knot sets
    keep = [ks[0]]
    for x in ks[1:]:
        if x - keep[-1] > 1e-14:
            keep.append(x)
        else:
            keep[-1] = max(keep[-1], x) if x == 1.0 else keep[-1]
    return np.array(keep)


def _piece_index(c: IntegratedCdf, x: float) -> int:
    i = int(np.searchsorted(c.knots, x, side="right") - 1)
    return min(max(i, 0), len(c.coeffs) - 1)


def _diff_quads(cf: IntegratedCdf, cg: IntegratedCdf):
    """Local quadratics of ``C_g - C_f`` on the merged knot partition.

    Pieces are identified by their midpoints: near-duplicate knots from
    independently assembled curves would otherwise select the wrong side."""
    knots = _merged_knots(cf, cg)
    out = []
    for i in range(len(knots) - 1):
        k = knots[i]
        mid = 0.5 * (k + knots[i + 1])
        vf, sf, qf = cf.local_quad(_piece_index(cf, mid), k)
        vg, sg, qg = cg.local_quad(_piece_index(cg, mid), k)
        out.append((vg - vf, sg - sf, qg - qf))
    return knots, out


def _quad_min_on(d0, d1, d2, h):
    """Min of ``d0 + d1 t + d2 t^2`` over ``t in [0, h]`` and its argmin."""
    best_t, best_v = 0.0, d0
    v_end = d0 + h * (d1 + h * d2)
    if v_end < best_v:
        best_t, best_v = h, v_end
    if d2 > 0.0:
        t = -d1 / (2.0 * d2)
        if 0.0 < t < h:
            v = d0 + t * (d1 + t * d2)
            if v < best_v:
                best_t, best_v = t, v
    return best_t, best_v


def less_informative(
    f: Distribution, g: Distribution, tol: float = ORDER_TOL
) -> OrderResult:
    """Whether ``f`` is a mean-preserving contraction of ``g``: the integrated
    CDFs satisfy ``C_f <= C_g`` everywhere with equality at 1.

    Checked exactly at merged knots plus interior extrema of each quadratic
    difference piece; on failure the witness is a minimiser of ``C_g - C_f``.
    """
    cf, cg = integrated_cdf(f), integrated_cdf(g)
    end_gap = cg.at_one - cf.at_one
    if abs(end_gap) > tol:
        return OrderResult(False, witness=1.0, gap=-abs(end_gap))
    knots, quads = _diff_quads(cf, cg)
    worst_x, worst_v = 0.0, np.inf
    for i, (d0, d1, d2) in enumerate(quads):
        h = knots[i + 1] - knots[i]
        t, v = _quad_min_on(d0, d1, d2, h)
        if v < worst_v:
            worst_x, worst_v = knots[i] + t, v
    if worst_v < -tol:
        return OrderResult(False, witness=float(worst_x), gap=float(worst_v))
    return OrderResult(True, gap=float(min(worst_v, 0.0)))


def _quad_roots(d0, d1, d2, h):
    """Roots of ``d0 + d1 t + d2 t^2`` in ``(0, h)``, via the cancellation-
    free quadratic formula (a tiny ``d2`` must not lose the linear root)."""
    roots = []
    if abs(d2) > 1e-300:
        disc = d1 * d1 - 4.0 * d2 * d0
        if disc >= 0.0:
            r = np.sqrt(disc)
            q = -0.5 * (d1 + np.copysign(r, d1) if d1 != 0.0 else d1 + r)
            cand = [q / d2]
            if q != 0.0:
                cand.append(d0 / q)
            for t in cand:
                if 0.0 < t < h:
                    roots.append(float(t))
    elif abs(d1) > 1e-300:
        t = -d0 / d1
        if 0.0 < t < h:
            roots.append(float(t))
    return sorted(set(roots))


def _require_equal_means(f: Distribution, g: Distribution, tol: float) -> None:
    if abs(f.mean - g.mean) > tol:
        raise MeanMismatch(f"means differ: {f.mean!r} vs {g.mean!r}")


def join(f: Distribution, g: Distribution, tol: float = ORDER_TOL) -> Distribution:
    """Least upper bound in informativeness: pointwise max of the integrated
    CDFs, split exactly at their crossing points."""
    _require_equal_means(f, g, tol)
    cf, cg = integrated_cdf(f), integrated_cdf(g)
    knots, quads = _diff_quads(cf, cg)
    refined = [float(knots[0])]
    for i, (d0, d1, d2) in enumerate(quads):
        h = knots[i + 1] - knots[i]
        refined.extend(knots[i] + t for t in _quad_roots(d0, d1, d2, h))
        refined.append(float(knots[i + 1]))
    out_knots, out_coeffs = [], []
    for i in range(len(refined) - 1):
        a, b = refined[i], refined[i + 1]
        if b - a <= 1e-15:
            continue
        mid = 0.5 * (a + b)
        src = cf if cf(mid) >= cg(mid) else cg
        out_knots.append(a)
        out_coeffs.append(src.local_quad(_piece_index(src, mid), a))
    out_knots.append(refined[-1])
    cj = IntegratedCdf(np.array(out_knots), np.array(out_coeffs))
    return cj.to_distribution()


def meet(f: Distribution, g: Distribution, tol: float = ORDER_TOL) -> Distribution:
    """Greatest lower bound: the distribution whose integrated CDF is the
    convex envelope of the pointwise min of the two integrated CDFs."""
    _require_equal_means(f, g, tol)
    cf, cg = integrated_cdf(f), integrated_cdf(g)
    knots, quads = _diff_quads(cf, cg)
    pieces = []
    cursor = float(knots[0])
    for i, (d0, d1, d2) in enumerate(quads):
        h = knots[i + 1] - knots[i]
        cuts = [0.0] + _quad_roots(d0, d1, d2, h) + [h]
        for a_t, b_t in zip(cuts[:-1], cuts[1:]):
            a, b = knots[i] + a_t, knots[i] + b_t
            if b - a <= 1e-15:
                continue
            mid = 0.5 * (a + b)
            src = cf if cf(mid) <= cg(mid) else cg
            q = src.local_quad(_piece_index(src, mid), a)
            pieces.append(_quad_piece(a, b, q))
        cursor = float(knots[i + 1])
    assert cursor == knots[-1]
    snap = [p.lo for p in pieces] + [pieces[-1].hi]
    return envelope_to_distribution(convex_minorant(pieces), snap_points=snap)


def _quad_piece(a: float, b: float, coeffs: tuple[float, float, float]) -> Piece:
    c0, c1, c2 = coeffs

    def fn(x, a=a, c0=c0, c1=c1, c2=c2):
        d = np.asarray(x, dtype=float) - a
        return c0 + d * (c1 + d * c2)

    return Piece(a, b, fn, payload=("quad", a, coeffs))


def pieces_of(c: IntegratedCdf) -> list[Piece]:
    """Envelope pieces for an integrated CDF."""
    return [
        _quad_piece(float(c.knots[i]), float(c.knots[i + 1]), tuple(c.coeffs[i]))
        for i in range(len(c.coeffs))
    ]


def envelope_to_distribution(env, snap_points=()) -> Distribution:
    """Rebuild a distribution from a convex envelope whose contact pieces are
    quadratics tagged ``("quad", x0, coeffs)`` and whose bridges are chords.

    Only the slope structure matters.  Micro-segments left by hull noise are
    dropped; a junction carrying a slope jump is snapped to the nearest
    original function knot (``snap_points``) since envelope kinks can only
    sit on knots of the underlying function, and a small residual jump with
    differing curvatures is resolved to the exact slope-equalisation point
    (a tangential contact, where the true envelope has no kink)."""
    # slope pieces: [lo, hi, slope_at_lo, dslope/dx]
    pieces: list[list[float]] = []
    for seg in env.segments:
        if seg.hi - seg.lo <= 1e-7:
            continue
        if seg.kind == "contact" and seg.payload is not None and seg.payload[0] == "quad":
            _, x0, (c0, c1, c2) = seg.payload
            lo = seg.lo
            pieces.append([lo, seg.hi, c1 + 2.0 * c2 * (lo - x0), 2.0 * c2])
        else:
            pieces.append([seg.lo, seg.hi, seg.slope, 0.0])
    if not pieces:
        s = env.segments[0]
        pieces = [[env.lo, env.hi, s.slope, 0.0]]
    # bridge dropped micro-gaps with mass-free fillers: stretching a
    # density-bearing piece would add spurious mass (density x gap)
    filled: list[list[float]] = []
    if pieces[0][0] > env.lo:
        filled.append([env.lo, pieces[0][0], pieces[0][2], 0.0])
    for piece in pieces:
        if filled and piece[0] > filled[-1][1]:
            prev = filled[-1]
            s_end = prev[2] + prev[3] * (prev[1] - prev[0])
            filled.append([prev[1], piece[0], s_end, 0.0])
        filled.append(piece)
    if filled[-1][1] < env.hi:
        prev = filled[-1]
        s_end = prev[2] + prev[3] * (prev[1] - prev[0])
        filled.append([prev[1], env.hi, s_end, 0.0])
    pieces = filled

    snaps = np.asarray(sorted(set(float(s) for s in snap_points)))
    for i in range(len(pieces) - 1):
        lo_a, hi_a, s_a, d_a = pieces[i]
        lo_b, hi_b, s_b, d_b = pieces[i + 1]
        jump = (s_b + d_b * (hi_a - lo_b)) - (s_a + d_a * (hi_a - lo_a))
        if abs(jump) <= 1e-12:
            continue
        if abs(jump) <= 1e-6 and abs(d_a - d_b) >= 1e-12:
            t = (s_b - d_b * lo_b - s_a + d_a * lo_a) / (d_a - d_b)
            if lo_a <= t <= hi_b:
                pieces[i][1] = t
                pieces[i + 1] = [t, hi_b, s_b + d_b * (t - lo_b), d_b]
                continue
        if jump <= 0.0:
            continue  # residual concave micro-kink: carries no mass
        # envelope kinks sit on function knots exactly; snapping corrects
        # the hull's localisation error
        window = 1e-6
        if len(snaps):
            j = int(np.searchsorted(snaps, hi_a))
            cands = sorted(snaps[max(0, j - 1) : j + 1], key=lambda c: abs(c - hi_a))
            for cand in cands:
                if abs(cand - hi_a) <= window and lo_a <= cand <= hi_b:
                    pieces[i][1] = float(cand)
                    pieces[i + 1] = [float(cand), hi_b, s_b + d_b * (cand - lo_b), d_b]
                    break

    atoms, uniforms = [], []
    prev_slope = 0.0
    for lo, hi, s_lo, dsdx in pieces:
        if hi - lo <= 1e-12:
            continue  # collapsed by snapping: carries no mass, no slope
        if s_lo - prev_slope > 1e-9:
            atoms.append((float(lo), float(s_lo - prev_slope)))
        if dsdx * (hi - lo) > 1e-12:
            uniforms.append((float(lo), float(hi), float(dsdx * (hi - lo))))
        prev_slope = s_lo + dsdx * (hi - lo)
    if 1.0 - prev_slope > 1e-9:
        atoms.append((float(pieces[-1][1]), float(1.0 - prev_slope)))
    total = sum(w for _, w in atoms) + sum(w for _, _, w in uniforms)
    atoms = [(x, w / total) for x, w in atoms]
    uniforms = [(a, b, w / total) for a, b, w in uniforms]
    return Distribution.make(atoms, uniforms)


def conditional_mean(f: Distribution, a: float, b: float) -> float:
    """Exact conditional expectation of ``f`` on the closed interval
    ``[a, b]``; raises :class:`NullEvent` on a null interval."""
    m = f.mass_between(a, b)
    if m <= 0.0:
        raise NullEvent(f"interval [{a!r}, {b!r}] carries no mass")
    return f.partial_mean(a, b) / m


def upper_censorship(f0: Distribution, a: float) -> Distribution:
    """Reveal below ``a`` and pool all mass of ``[a, 1]`` at its conditional
    mean."""
    if not 0.0 <= a < 1.0:
        raise DomainError("cutoff must lie in [0, 1)")
    return f0.pool_interval(a, 1.0) if f0.mass_between(a, 1.0) > 0.0 else _null(a)


def _null(a: float):
    raise NullEvent(f"no mass at or above {a!r}")


def project_masses(f: Distribution, points: np.ndarray) -> np.ndarray:
    """Masses on an arbitrary sorted point set covering the support: each
    atom and each per-cell slice of a uniform segment is split between its
    two bracketing points so the slice mean is preserved exactly."""
    points = np.asarray(points, dtype=float)
    w = np.zeros(len(points))

    def drop(mass: float, mean: float) -> None:
        j = int(np.searchsorted(points, mean, side="right") - 1)
        j = min(max(j, 0), len(points) - 2)
        left, right = points[j], points[j + 1]
        if mean <= left:
            w[j] += mass
        elif mean >= right:
            w[j + 1] += mass
        else:
            lam = (right - mean) / (right - left)
            w[j] += mass * lam
            w[j + 1] += mass * (1.0 - lam)

    for x, m in f.atoms:
        drop(m, x)
    for a, b, m in f.uniforms:
        dens = m / (b - a)
        lo_i = int(np.searchsorted(points, a, side="right") - 1)
        hi_i = int(np.searchsorted(points, b, side="left"))
        cells = np.unique(np.clip(np.concatenate([[a], points[max(lo_i, 0) : hi_i], [b]]), a, b))
        for left, right in zip(cells[:-1], cells[1:]):
            if right > left:
                drop(dens * (right - left), 0.5 * (left + right))
    return w


def discretize(f: Distribution, grid: GridSpec) -> Distribution:
    """Project onto grid atoms, preserving total mass and the mean of every
    local slice exactly (two-point split per cell)."""
    pts = grid.points
    w = project_masses(f, pts)
    return Distribution.make(atoms=[(float(x), float(m)) for x, m in zip(pts, w) if m > 0.0])
