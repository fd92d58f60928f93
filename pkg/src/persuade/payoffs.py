"""Piecewise-polynomial interim payoffs on [0, 1].

Payoffs are finite lists of polynomial segments (coefficients in the global
variable, increasing degree) with curvature tags.  Values at interior
breakpoints are the max of the one-sided limits, so every payoff is upper
semi-continuous by construction.  The module provides regularity checking,
concave/restricted-convex envelopes, tangents, the ordinal-convexity
comparison, and the crater-property decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from ._envelope import Envelope, Piece, concave_majorant, convex_minorant
from .errors import DomainError, EmptySet, NotRegular
from .measures import GridSpec

CONT_TOL = 1e-10     # value/derivative continuity at breakpoints
CURV_TOL = 1e-8      # slack when validating curvature tags
GAP_TOL = 1e-9       # envelope contact detection

CURVATURES = ("affine", "convex", "concave", "unclassified")

__all__ = [
    "Payoff",
    "ChordWitness",
    "CraterWitness",
    "RegularityReport",
    "OlcResult",
    "CraterResult",
    "Affine",
    "check_regular",
    "concave_envelope",
    "restricted_convex_envelope",
    "is_ordinally_less_convex",
    "check_crater",
    "is_s_shaped",
    "tangent",
    "curvature_intervals",
    "strict_convex_runs",
]


@dataclass(frozen=True)
class Payoff:
    """Segments ``(lo, hi, coeffs, curvature)`` partitioning [0, 1].

    ``coeffs`` are monomial coefficients in increasing degree, in the global
    variable.  ``curvature`` is one of ``affine``, ``convex`` (strictly convex
    on the segment interior), ``concave`` (strictly concave), or
    ``unclassified``.
    """

    segments: tuple[tuple[float, float, tuple[float, ...], str], ...]

    @staticmethod
    def make(segments: Iterable[tuple]) -> "Payoff":
        segs = []
        for lo, hi, coeffs, curvature in segments:
            if curvature not in CURVATURES:
                raise DomainError(f"unknown curvature tag {curvature!r}")
            if not hi > lo:
                raise DomainError("empty segment")
            segs.append((float(lo), float(hi), tuple(float(c) for c in coeffs), curvature))
        segs.sort()
        if abs(segs[0][0]) > 1e-12 or abs(segs[-1][1] - 1.0) > 1e-12:
            raise DomainError("segments must cover [0, 1]")
        for (_, hi, _, _), (lo, _, _, _) in zip(segs[:-1], segs[1:]):
            if abs(hi - lo) > 1e-12:
                raise DomainError("segments must partition [0, 1]")
        # snap shared breakpoints
        snapped = [segs[0]]
        for lo, hi, c, k in segs[1:]:
            snapped.append((snapped[-1][1], hi, c, k))
        first = snapped[0]
        snapped[0] = (0.0, first[1], first[2], first[3])
        last = snapped[-1]
        snapped[-1] = (last[0], 1.0, last[2], last[3])
        return Payoff(tuple(snapped))

    @staticmethod
    def polynomial(coeffs: Sequence[float], curvature: str | None = None) -> "Payoff":
        """Single global polynomial, split at curvature sign changes when no
        tag is given."""
        if curvature is not None:
            return Payoff.make([(0.0, 1.0, tuple(coeffs), curvature)])
        return Payoff.make(split_by_curvature(0.0, 1.0, tuple(coeffs)))

    @staticmethod
    def step(threshold: float, low: float = 0.0, high: float = 1.0) -> "Payoff":
        """Upper semi-continuous step ``high * 1{m >= threshold}`` (+ low)."""
        return Payoff.make(
            [(0.0, threshold, (low,), "affine"), (threshold, 1.0, (high,), "affine")]
        )

    # -- geometry ------------------------------------------------------------

    @property
    def breakpoints(self) -> np.ndarray:
        return np.array([s[0] for s in self.segments] + [1.0])

    def segment_index(self, m: float) -> int:
        """Index of the segment owning ``m`` from the right (last segment at 1)."""
        los = [s[0] for s in self.segments]
        i = int(np.searchsorted(los, m, side="right") - 1)
        return min(max(i, 0), len(self.segments) - 1)

    # -- evaluation ------------------------------------------------------------

    def eval(self, m: float) -> float:
        """Exact value; at an interior breakpoint, the max of one-sided limits."""
        if not -1e-12 <= m <= 1.0 + 1e-12:
            raise DomainError(f"{m!r} outside [0, 1]")
        m = min(max(m, 0.0), 1.0)
        i = self.segment_index(m)
        v = float(P.polyval(m, self.segments[i][2]))
        if i > 0 and m == self.segments[i][0]:
            v = max(v, float(P.polyval(m, self.segments[i - 1][2])))
        return v

    def values(self, xs) -> np.ndarray:
        """Vectorised :meth:`eval` (same breakpoint convention)."""
        xs = np.asarray(xs, dtype=float)
        if xs.size and (xs.min() < -1e-12 or xs.max() > 1 + 1e-12):
            raise DomainError("points outside [0, 1]")
        xs = np.clip(xs, 0.0, 1.0)
        los = np.array([s[0] for s in self.segments])
        idx = np.clip(np.searchsorted(los, xs, side="right") - 1, 0, len(self.segments) - 1)
        out = np.empty_like(xs)
        for i, seg in enumerate(self.segments):
            mask = idx == i
            if mask.any():
                out[mask] = P.polyval(xs[mask], seg[2])
            if i > 0:
                at_break = xs == seg[0]
                if at_break.any():
                    out[at_break] = np.maximum(
                        out[at_break], P.polyval(xs[at_break], self.segments[i - 1][2])
                    )
        return out

    def deriv(self, m: float) -> float:
        """Right-derivative (left-derivative at 1)."""
        if not -1e-12 <= m <= 1.0 + 1e-12:
            raise DomainError(f"{m!r} outside [0, 1]")
        m = min(max(m, 0.0), 1.0)
        i = self.segment_index(m) if m < 1.0 else len(self.segments) - 1
        return float(P.polyval(m, P.polyder(self.segments[i][2])))

    def derivs(self, xs) -> np.ndarray:
        xs = np.clip(np.asarray(xs, dtype=float), 0.0, 1.0)
        los = np.array([s[0] for s in self.segments])
        idx = np.clip(np.searchsorted(los, xs, side="right") - 1, 0, len(self.segments) - 1)
        idx[xs >= 1.0] = len(self.segments) - 1
        out = np.empty_like(xs)
        for i, seg in enumerate(self.segments):
            mask = idx == i
            if mask.any():
                out[mask] = P.polyval(xs[mask], P.polyder(seg[2]))
        return out

    def second_deriv(self, m: float) -> float:
        i = self.segment_index(m)
        return float(P.polyval(m, P.polyder(self.segments[i][2], 2)))

    def eval_exact(self, m: Fraction) -> Fraction:
        """Exact rational evaluation (coefficients taken as exact dyadics)."""
        i = self.segment_index(float(m))
        v = _polyval_exact(self.segments[i][2], m)
        if i > 0 and m == Fraction(self.segments[i][0]):
            v = max(v, _polyval_exact(self.segments[i - 1][2], m))
        return v

    def deriv_exact(self, m: Fraction) -> Fraction:
        i = self.segment_index(float(m)) if m < 1 else len(self.segments) - 1
        c = self.segments[i][2]
        return sum(
            (Fraction(c[k]) * k * m ** (k - 1) for k in range(1, len(c))), Fraction(0)
        )

    # -- transforms ------------------------------------------------------------

    def shift_scale(self, alpha: float, beta: float) -> "Payoff":
        """``alpha * u + beta`` with tags preserved (flipped when alpha < 0)."""
        flip = {"convex": "concave", "concave": "convex"}
        segs = []
        for lo, hi, c, k in self.segments:
            c2 = tuple(alpha * ci for ci in c)
            c2 = (c2[0] + beta,) + c2[1:]
            k2 = flip.get(k, k) if alpha < 0 else k
            segs.append((lo, hi, c2, k2))
        return Payoff.make(segs)

    # -- serialisation ---------------------------------------------------------

    def as_dict(self) -> dict:
        return {
            "segments": [
                {"from": lo, "to": hi, "coeffs": list(c), "curvature": k}
                for lo, hi, c, k in self.segments
            ]
        }

    @staticmethod
    def from_dict(data: dict) -> "Payoff":
        return Payoff.make(
            (d["from"], d["to"], tuple(d["coeffs"]), d.get("curvature", "unclassified"))
            for d in data["segments"]
        )


def _polyval_exact(coeffs: Sequence[float], m: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * m + Fraction(c)
    return acc


def compose_poly(outer: Sequence[float], inner: Sequence[float]) -> tuple[float, ...]:
    """Coefficients of ``outer(inner(m))`` (increasing degree)."""
    acc = np.array([float(outer[-1])])
    for c in reversed(outer[:-1]):
        acc = P.polyadd(P.polymul(acc, inner), [float(c)])
    return tuple(float(v) for v in acc)


def reflect(u: Payoff) -> Payoff:
    """The payoff ``m -> u(1 - m)`` (curvature tags are preserved)."""
    segs = [
        (1.0 - hi, 1.0 - lo, compose_poly(c, (1.0, -1.0)), k)
        for lo, hi, c, k in u.segments
    ]
    return Payoff.make(segs)


def split_by_curvature(lo: float, hi: float, coeffs: tuple[float, ...]) -> list[tuple]:
    """Split ``[lo, hi]`` at the sign changes of the second derivative and tag
    each part."""
    dd = P.polyder(coeffs, 2) if len(coeffs) > 2 else np.array([0.0])
    cuts = [lo, hi]
    if len(dd) > 1 and np.max(np.abs(dd)) > 0:
        for r in np.roots(dd[::-1]):
            if abs(r.imag) < 1e-12 and lo + 1e-12 < r.real < hi - 1e-12:
                cuts.append(float(r.real))
    cuts = sorted(set(cuts))
    out = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a < 1e-12:
            continue
        s = float(P.polyval(0.5 * (a + b), dd))
        scale = max(1.0, float(np.max(np.abs(coeffs))))
        if abs(s) <= CURV_TOL * scale:
            tag = "affine"
        else:
            tag = "convex" if s > 0 else "concave"
        out.append((a, b, coeffs, tag))
    return out


@dataclass(frozen=True)
class ChordWitness:
    """A chord ``[x, z]`` and interior weight ``alpha`` at which the convexity
    transfer fails; ``kind`` says whether the weak inequality or the strict
    transfer broke."""

    x: float
    z: float
    alpha: float
    kind: str  # "weak" | "strict"

    @property
    def midpoint(self) -> float:
        return self.alpha * self.x + (1.0 - self.alpha) * self.z


@dataclass(frozen=True)
class CraterWitness:
    x: float
    y: float
    z: float
    w: float
    crossing: tuple[float, float]
    reason: str  # "equal-slopes" | "crossing-outside" | "crossing-above"


@dataclass(frozen=True)
class RegularityReport:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class OlcResult:
    holds: bool
    witness: ChordWitness | None = None
    grid_n: int = 0   # a True verdict is relative to this grid resolution

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class CraterResult:
    holds: bool
    witness: CraterWitness | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Affine:
    """Line ``m -> value + slope * (m - at)``."""

    at: float
    value: float
    slope: float

    def __call__(self, m):
        return self.value + self.slope * (np.asarray(m, dtype=float) - self.at)


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------


def check_regular(u: Payoff) -> RegularityReport:
    """Continuity, derivative continuity/boundedness, and consistency of each
    curvature tag with the sign of the second derivative on the interior."""
    for i, (lo, hi, c, kind) in enumerate(u.segments):
        if kind == "unclassified":
            return RegularityReport(False, f"segment {i} unclassified")
        if not np.all(np.isfinite(c)):
            return RegularityReport(False, f"segment {i} has non-finite coefficients")
    scale = max(1.0, max(abs(v) for s in u.segments for v in s[2]))
    for i in range(1, len(u.segments)):
        b = u.segments[i][0]
        left, right = u.segments[i - 1][2], u.segments[i][2]
        if abs(P.polyval(b, left) - P.polyval(b, right)) > CONT_TOL * scale:
            return RegularityReport(False, f"discontinuity at {b!r}")
        dl = P.polyval(b, P.polyder(left))
        dr = P.polyval(b, P.polyder(right))
        if abs(dl - dr) > CONT_TOL * max(scale, abs(dl), abs(dr)):
            return RegularityReport(False, f"derivative discontinuity at {b!r}")
    for i, (lo, hi, c, kind) in enumerate(u.segments):
        dd = P.polyder(c, 2) if len(c) > 2 else np.array([0.0])
        lo_v, hi_v = _poly_range(dd, lo, hi)
        mag = max(scale, abs(lo_v), abs(hi_v))
        if kind == "affine":
            if max(abs(lo_v), abs(hi_v)) > CURV_TOL * mag:
                return RegularityReport(False, f"segment {i} tagged affine but curved")
        elif kind == "convex":
            if lo_v < -CURV_TOL * mag or hi_v <= CURV_TOL * mag:
                return RegularityReport(False, f"segment {i} tagged convex inconsistently")
        elif kind == "concave":
            if hi_v > CURV_TOL * mag or lo_v >= -CURV_TOL * mag:
                return RegularityReport(False, f"segment {i} tagged concave inconsistently")
    return RegularityReport(True)


def _poly_range(coeffs, lo: float, hi: float) -> tuple[float, float]:
    """(min, max) of a polynomial over [lo, hi] via critical points."""
    cand = [lo, hi]
    d = P.polyder(coeffs) if len(coeffs) > 1 else np.array([0.0])
    if len(d) > 1 or abs(d[0]) > 0:
        if np.max(np.abs(d)) > 0 and len(d) > 1:
            for r in np.roots(np.asarray(d)[::-1]):
                if abs(r.imag) < 1e-12 and lo < r.real < hi:
                    cand.append(float(r.real))
    vals = [float(P.polyval(x, coeffs)) for x in cand]
    return min(vals), max(vals)


# ---------------------------------------------------------------------------
# curvature structure
# ---------------------------------------------------------------------------


def curvature_intervals(u: Payoff, kind: str) -> list[tuple[float, float]]:
    """Maximal closed intervals on which ``u`` is weakly convex or concave:
    contiguous segments tagged ``kind`` or ``affine``, merged."""
    assert kind in ("convex", "concave")
    out: list[tuple[float, float]] = []
    for lo, hi, _, k in u.segments:
        if k in (kind, "affine"):
            if out and abs(out[-1][1] - lo) <= 1e-12:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
    # an interval that is affine throughout belongs to both curvature kinds;
    # keep it: pooling or spreading over an affine stretch is value-neutral
    return out


def strict_convex_runs(u: Payoff) -> list[tuple[float, float]]:
    """Maximal contiguous unions of strictly-convex segments."""
    out: list[tuple[float, float]] = []
    for lo, hi, _, k in u.segments:
        if k == "convex":
            if out and abs(out[-1][1] - lo) <= 1e-12:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
    return out


def is_s_shaped(u: Payoff) -> bool:
    """Strictly convex then concave, or concave then strictly convex, with
    both regimes non-degenerate."""
    rep = check_regular(u)
    if not rep:
        raise NotRegular(rep.reason)
    kinds = [k for _, _, _, k in u.segments]
    n = len(kinds)
    for split in range(1, n):
        left, right = kinds[:split], kinds[split:]
        if all(k == "convex" for k in left) and all(k in ("concave", "affine") for k in right):
            return True
        if all(k in ("concave", "affine") for k in left) and all(k == "convex" for k in right):
            return True
    return False


def tangent(u: Payoff, x: float) -> Affine:
    rep = check_regular(u)
    if not rep:
        raise NotRegular(rep.reason)
    return Affine(at=x, value=u.eval(x), slope=u.deriv(x))


# ---------------------------------------------------------------------------
# envelopes
# ---------------------------------------------------------------------------


def payoff_pieces(u: Payoff) -> list[Piece]:
    out = []
    for i, (lo, hi, c, _) in enumerate(u.segments):
        out.append(Piece(lo, hi, lambda x, c=c: P.polyval(np.asarray(x, dtype=float), c),
                         payload=("seg", i)))
    return out


@dataclass
class ConcaveEnvelope:
    """Least concave majorant with the contact set reported from the hull."""

    env: Envelope
    payoff: Payoff

    def __call__(self, x):
        return self.env(x)

    @property
    def contact_intervals(self) -> list[tuple[float, float]]:
        scale = max(1.0, max(abs(v) for s in self.payoff.segments for v in s[2]))
        out: list[tuple[float, float]] = []

        def push(a: float, b: float) -> None:
            if out and a <= out[-1][1] + 1e-12:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))

        for seg in self.env.segments:
            if seg.kind == "contact":
                push(seg.lo, seg.hi)
            else:
                # a chord can hug an affine stretch of the payoff
                mid = 0.5 * (seg.lo + seg.hi)
                if abs(float(seg.value(mid)) - self.payoff.eval(mid)) <= GAP_TOL * scale:
                    push(seg.lo, seg.hi)
                else:
                    push(seg.lo, seg.lo)
                    push(seg.hi, seg.hi)
        return out


def _stages_for(refinement: float, samples: int) -> int:
    # initial window ~ 1/samples, each stage shrinks it by samples/2
    stages, w = 0, 1.0 / samples
    while w > refinement and stages < 12:
        w *= 2.0 / samples
        stages += 1
    return stages


def concave_envelope(u: Payoff, refinement: float = 1e-9, samples: int = 65) -> ConcaveEnvelope:
    env = concave_majorant(payoff_pieces(u), samples=samples,
                           stages=_stages_for(refinement, samples))
    return ConcaveEnvelope(env, u)


def restricted_convex_envelope(
    u: Payoff, domain: Sequence, refinement: float = 1e-9, samples: int = 65
) -> Envelope:
    """Greatest convex minorant of ``u`` restricted to ``domain`` (+inf off
    it).  ``domain`` is a sequence of points and/or ``(lo, hi)`` intervals;
    evaluate with ``env(x, outside=np.inf)`` to get +inf beyond the hull."""
    items = list(domain)
    if not items:
        raise EmptySet("restricted envelope over an empty set")
    pieces: list[Piece] = []
    for it in items:
        if np.isscalar(it):
            x = float(it)
            pieces.append(Piece(x, x, lambda q, x=x: np.full_like(np.asarray(q, dtype=float), _usc_val(u, x))))
        else:
            a, b = float(it[0]), float(it[1])
            if b < a:
                raise DomainError("interval reversed")
            for lo, hi, c, _ in u.segments:
                left, right = max(lo, a), min(hi, b)
                if right >= left:
                    pieces.append(
                        Piece(left, right, lambda q, c=c: P.polyval(np.asarray(q, dtype=float), c))
                    )
    return convex_minorant(pieces, samples=samples, stages=_stages_for(refinement, samples))


def _usc_val(u: Payoff, x: float) -> float:
    return u.eval(x)


# ---------------------------------------------------------------------------
# ordinal convexity
# ---------------------------------------------------------------------------


def _grid_values(obj, xs: np.ndarray) -> np.ndarray:
    if isinstance(obj, Payoff):
        return obj.values(xs)
    if hasattr(obj, "values"):
        return np.asarray(obj.values(xs), dtype=float)
    return np.array([obj.eval(x) for x in xs], dtype=float)


def is_ordinally_less_convex(
    u, v, grid: GridSpec | None = None, breakpoints: Sequence[float] = ()
) -> OlcResult:
    """Grid decision of the ordinal convexity order.

    Over every grid triple ``x < m < z``: whenever the chord of ``u`` over
    ``[x, z]`` weakly dominates ``u`` at all interior grid points, the chord
    of ``v`` must dominate ``v`` there too, strictly wherever ``u``'s
    domination is strict.  A False verdict carries a witness re-verified on
    the polynomial pieces (exact rational arithmetic when both payoffs are
    polynomial); a True verdict is relative to the grid resolution.
    """
    grid = grid or GridSpec(201)
    extra = [np.asarray(breakpoints, dtype=float)]
    for obj in (u, v):
        if isinstance(obj, Payoff):
            extra.append(obj.breakpoints)
    xs = np.unique(np.concatenate([grid.points, *extra]))
    uu = _grid_values(u, xs)
    vv = _grid_values(v, xs)
    n = len(xs)
    scale_u = max(1.0, float(np.max(np.abs(uu))))
    scale_v = max(1.0, float(np.max(np.abs(vv))))
    eps_u, eps_v = 1e-11 * scale_u, 1e-11 * scale_v

    candidates: list[tuple[float, ChordWitness]] = []
    for i in range(n - 2):
        span = xs[i + 1 :] - xs[i]                      # z - x for z = i+1..n-1
        gu = np.subtract.outer(uu[i + 1 :], uu[i])      # u(z) - u(x)
        gv = np.subtract.outer(vv[i + 1 :], vv[i])
        for k in range(i + 2, n):
            zi = k - (i + 1)
            t = (xs[i + 1 : k] - xs[i]) / span[zi]      # interior positions
            chord_u = uu[i] + t * gu[zi]
            chord_v = vv[i] + t * gv[zi]
            du = chord_u - uu[i + 1 : k]
            if du.min() < -eps_u:
                continue  # chord condition for u fails: no constraint
            dv = chord_v - vv[i + 1 : k]
            bad_weak = dv < -eps_v
            bad_strict = (du > eps_u) & (dv <= eps_v)
            if bad_weak.any() or bad_strict.any():
                if bad_weak.any():
                    j = int(np.argmin(dv))
                    kind, score = "weak", float(-dv[j])
                else:
                    j = int(np.argmax(np.where(bad_strict, du, -np.inf)))
                    kind, score = "strict", float(du[j])
                m = xs[i + 1 + j]
                alpha = float((xs[k] - m) / (xs[k] - xs[i]))
                candidates.append(
                    (score, ChordWitness(float(xs[i]), float(xs[k]), alpha, kind))
                )
    candidates.sort(key=lambda c: -c[0])
    for _, wit in candidates[:64]:
        if _verify_chord_witness(u, v, wit):
            return OlcResult(False, witness=wit, grid_n=len(xs))
    return OlcResult(True, grid_n=len(xs))


def _verify_chord_witness(u, v, wit: ChordWitness) -> bool:
    """Check that the chord condition for u holds on the whole interval and
    that the transfer genuinely fails at the witness weight."""
    if isinstance(u, Payoff) and not _chord_dominates(u, wit.x, wit.z):
        return False
    if isinstance(u, Payoff) and isinstance(v, Payoff):
        x, z = Fraction(wit.x), Fraction(wit.z)
        m = Fraction(wit.alpha) * x + (1 - Fraction(wit.alpha)) * z
        a = (z - m) / (z - x)
        cu = a * u.eval_exact(x) + (1 - a) * u.eval_exact(z) - u.eval_exact(m)
        cv = a * v.eval_exact(x) + (1 - a) * v.eval_exact(z) - v.eval_exact(m)
        if wit.kind == "weak":
            return cu >= 0 and cv < 0
        return cu > 0 and cv <= 0
    # non-polynomial payoff: float verification with a margin
    m = wit.midpoint
    cu = wit.alpha * u.eval(wit.x) + (1 - wit.alpha) * u.eval(wit.z) - u.eval(m)
    cv = wit.alpha * v.eval(wit.x) + (1 - wit.alpha) * v.eval(wit.z) - v.eval(m)
    if wit.kind == "weak":
        return cu >= -1e-12 and cv < -1e-10
    return cu > 1e-10 and cv <= 1e-12


def _chord_dominates(u: Payoff, x: float, z: float, tol: float = 1e-12) -> bool:
    """Whether the chord of ``u`` over [x, z] dominates ``u`` on all of
    [x, z], by per-segment polynomial minimisation."""
    ux, uz = u.eval(x), u.eval(z)
    slope = (uz - ux) / (z - x)
    for lo, hi, c, _ in u.segments:
        left, right = max(lo, x), min(hi, z)
        if right <= left:
            continue
        # chord - poly on [left, right]
        diff = P.polysub((ux - slope * x, slope), c)
        lo_v, _ = _poly_range(diff, left, right)
        if lo_v < -tol * max(1.0, abs(ux), abs(uz)):
            return False
    # breakpoint values are maxima of one-sided limits
    for b in u.breakpoints[1:-1]:
        if x < b < z:
            if ux + slope * (b - x) < u.eval(b) - tol * max(1.0, abs(ux), abs(uz)):
                return False
    return True


# ---------------------------------------------------------------------------
# crater property
# ---------------------------------------------------------------------------


def check_crater(u: Payoff, scan_density: int = 400) -> CraterResult:
    """Decide the crater property: for every concave / strictly-convex /
    concave pattern and all tangency points ``x`` (left stretch) and ``w``
    (right stretch), the tangents must differ in slope and cross at a point
    of the convex stretch weakly below the payoff.

    Tangency pairs are scanned on a dense parameter grid (``scan_density``
    per stretch); a candidate violation is re-verified in exact rational
    arithmetic on the polynomial pieces before being returned.
    """
    rep = check_regular(u)
    if not rep:
        raise NotRegular(rep.reason)
    for y, z in strict_convex_runs(u):
        left = _stretch_ending_at(u, y)
        right = _stretch_starting_at(u, z)
        if left is None or right is None:
            continue
        xbar, wbar = left, right
        xs = np.linspace(xbar, y, scan_density + 1)[:-1]
        ws = np.linspace(z, wbar, scan_density + 1)[1:]
        wit = _scan_pattern(u, xs, ws, y, z)
        if wit is not None:
            return CraterResult(False, witness=wit)
    return CraterResult(True)


def _stretch_ending_at(u: Payoff, y: float) -> float | None:
    """Left endpoint of the maximal concave-or-affine stretch ending at y."""
    idx = next(
        (i for i, s in enumerate(u.segments) if abs(s[1] - y) <= 1e-12), None
    )
    if idx is None or u.segments[idx][3] not in ("concave", "affine"):
        return None
    lo = u.segments[idx][0]
    for j in range(idx - 1, -1, -1):
        if u.segments[j][3] not in ("concave", "affine"):
            break
        lo = u.segments[j][0]
    return lo


def _stretch_starting_at(u: Payoff, z: float) -> float | None:
    """Right endpoint of the maximal concave-or-affine stretch starting at z."""
    idx = next(
        (i for i, s in enumerate(u.segments) if abs(s[0] - z) <= 1e-12), None
    )
    if idx is None or u.segments[idx][3] not in ("concave", "affine"):
        return None
    hi = u.segments[idx][1]
    for j in range(idx + 1, len(u.segments)):
        if u.segments[j][3] not in ("concave", "affine"):
            break
        hi = u.segments[j][1]
    return hi


def _scan_pattern(u: Payoff, xs, ws, y: float, z: float) -> CraterWitness | None:
    ux, sx = u.values(xs), u.derivs(xs)
    uw, sw = u.values(ws), u.derivs(ws)
    ds = sx[:, None] - sw[None, :]
    scale = max(1.0, float(np.max(np.abs(sx))), float(np.max(np.abs(sw))))
    with np.errstate(divide="ignore", invalid="ignore"):
        num = (uw[None, :] - ux[:, None]) + sx[:, None] * xs[:, None] - sw[None, :] * ws[None, :]
        X = num / ds
        Y = ux[:, None] + sx[:, None] * (X - xs[:, None])
    equal = np.abs(ds) <= 1e-12 * scale
    outside = ~equal & ((X < y - 1e-12) | (X > z + 1e-12))
    inside = ~equal & ~outside
    above = np.zeros_like(equal)
    if inside.any():
        above[inside] = Y[inside] - u.values(np.clip(X[inside], 0.0, 1.0)) > 1e-10
    for mask in (equal, outside, above):
        if mask.any():
            ii, jj = np.nonzero(mask)
            for i, j in zip(ii[:32], jj[:32]):
                wit = _verify_crater_witness(u, float(xs[i]), float(ws[j]), y, z)
                if wit is not None:
                    return wit
    return None


def _verify_crater_witness(
    u: Payoff, x: float, w: float, y: float, z: float
) -> CraterWitness | None:
    """Exact re-verification of a scanned violation candidate."""
    fx, fw = Fraction(x), Fraction(w)
    ux, uw = u.eval_exact(fx), u.eval_exact(fw)
    sx, sw = u.deriv_exact(fx), u.deriv_exact(fw)
    if sx == sw:
        return CraterWitness(x, y, z, w, (float("nan"), float("nan")), "equal-slopes")
    X = (uw - ux + sx * fx - sw * fw) / (sx - sw)
    Y = ux + sx * (X - fx)
    if X < Fraction(y) or X > Fraction(z):
        return CraterWitness(x, y, z, w, (float(X), float(Y)), "crossing-outside")
    if 0 <= X <= 1 and Y > u.eval_exact(X):
        return CraterWitness(x, y, z, w, (float(X), float(Y)), "crossing-above")
    return None
