"""Hausdorff distances between segment unions and Dekking-curve convergence.

Distances are computed by sampling the source set along each segment at
arc-length spacing at most ``resolution`` and taking exact point-to-segment
distances to the other set, so the sampled supremum is low by at most
``resolution / 2``.  Nearest-segment queries go through a k-d tree on segment
midpoints with a covering test, which keeps them exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from .curves import DekkingCurve, ScalingInfo, scaling_info, segment_cap
from .cyclotomic import DEFAULT_WIDTH, CycNumber, embed_batch
from .similarity import MainResultCertificate
from .turtle import SegmentSet

__all__ = [
    "ApproxDistance",
    "ConvergenceRow",
    "hausdorff_distance",
    "directed_distance",
    "scaled_prefix_set",
    "convergence_report",
    "koch_reference",
    "shared_limit_report",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ApproxDistance:
    """The true distance lies in ``[value - error, value + error]``."""

    value: float
    error: float

    @property
    def lower(self) -> float:
        return max(0.0, self.value - self.error)

    @property
    def upper(self) -> float:
        return self.value + self.error


def _sample(s: SegmentSet, resolution: float) -> np.ndarray:
    a, b = s.starts, s.ends
    lengths = np.abs(b - a)
    counts = np.maximum(np.ceil(lengths / resolution).astype(np.int64), 1)
    seg = np.repeat(np.arange(len(s)), counts + 1)
    # parameter t = j / count for j = 0..count on each segment
    starts_idx = np.concatenate([[0], np.cumsum(counts + 1)[:-1]])
    j = np.arange(seg.size) - np.repeat(starts_idx, counts + 1)
    t = j / np.repeat(counts, counts + 1)
    return a[seg] + t * (b[seg] - a[seg])


def _point_segment(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    dd = (d.real ** 2 + d.imag ** 2)
    w = points - a
    with np.errstate(invalid="ignore", divide="ignore"):
        t = (w.real * d.real + w.imag * d.imag) / dd
    t = np.where(dd > 0, np.clip(t, 0.0, 1.0), 0.0)
    return np.abs(points - (a + t * d))


def _nearest_distances(points: np.ndarray, target: SegmentSet) -> np.ndarray:
    a, b = target.starts, target.ends
    nseg = len(target)
    mids = (a + b) / 2
    half = float(np.max(np.abs(b - a))) / 2
    tree = cKDTree(np.column_stack([mids.real, mids.imag]))
    xy = np.column_stack([points.real, points.imag])
    out = np.empty(points.size)
    todo = np.arange(points.size)
    k = min(8, nseg)
    while todo.size:
        if k >= nseg:
            for lo in range(0, todo.size, 512):
                idx = todo[lo:lo + 512]
                P = points[idx][:, None]
                out[idx] = _point_segment(P, a[None, :], b[None, :]).min(axis=1)
            break
        dist, cand = tree.query(xy[todo], k=k)
        exact = _point_segment(points[todo][:, None], a[cand], b[cand]).min(axis=1)
        # any segment outside the k candidates has its midpoint at least dist[:, -1] away
        covered = dist[:, -1] - half >= exact
        out[todo[covered]] = exact[covered]
        todo = todo[~covered]
        k *= 4
    return out


def directed_distance(source: SegmentSet, target: SegmentSet, resolution: float) -> float:
    """Sampled ``sup_{x in source} d(x, target)``."""
    return float(_nearest_distances(_sample(source, resolution), target).max())


def hausdorff_distance(A: SegmentSet, B: SegmentSet, resolution: float) -> ApproxDistance:
    """Hausdorff distance between two segment unions, with a certified error.

    ``error = resolution/2 + A.error_budget + B.error_budget`` plus a few ulps
    of float rounding scaled by the sets' extent.
    """
    if len(A) == 0 or len(B) == 0:
        raise ValueError("Hausdorff distance needs nonempty sets")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    value = max(directed_distance(A, B, resolution), directed_distance(B, A, resolution))
    extent = max(np.abs(A.vertices).max(), np.abs(B.vertices).max(), 1.0)
    error = float(resolution / 2 + A.error_budget + B.error_budget + 64 * _EPS * extent)
    return ApproxDistance(value, error)


# -- Dekking curve convergence ---------------------------------------------


def _regular_info(D: DekkingCurve) -> ScalingInfo:
    info = scaling_info(D)
    if not info.regular:
        m = info.modulus
        raise ValueError(f"{D} is not regular: |r| in [{float(m.lower)}, {float(m.upper)}]")
    return info


def _check_cap(count: int) -> None:
    cap = segment_cap()
    if count > cap:
        raise MemoryError(f"{count} segments exceeds the segment cap of {cap}")


def _scaled_sets(D: DekkingCurve, levels: range, width) -> dict[int, SegmentSet]:
    info = _regular_info(D)
    top = info.Q ** max(levels)
    _check_cap(top)
    points = D.turtle.points(top)
    inv_r = info.r.inv()
    out = {}
    for n in levels:
        s = inv_r ** n
        scaled = [x * s for x in points[: info.Q ** n + 1]]
        out[n] = SegmentSet.from_points(embed_batch(scaled, width), float(width))
    return out


def scaled_prefix_set(D: DekkingCurve, n: int, width: Fraction | int = DEFAULT_WIDTH) -> SegmentSet:
    """``r**-n`` times the polyline of the first ``Q**n`` steps, scaled exactly before embedding."""
    if n < 0:
        raise ValueError("level must be non-negative")
    return _scaled_sets(D, range(n, n + 1), width)[n]


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    step_distance: ApproxDistance
    bound: float
    tail_bound: float
    koch_distance: ApproxDistance | None = None

    @property
    def within_bound(self) -> bool:
        return self.step_distance.value - self.step_distance.error <= self.bound

    @property
    def koch_agrees(self) -> bool | None:
        if self.koch_distance is None:
            return None
        return self.koch_distance.value <= self.koch_distance.error


def convergence_report(
    D: DekkingCurve,
    n_max: int,
    resolution: float = 1e-3,
    width: Fraction | int = DEFAULT_WIDTH,
    against_koch: bool = False,
) -> list[ConvergenceRow]:
    """Rows for ``n = 0..n_max-1`` comparing ``d_H(S_n, S_{n+1})`` with ``|r|**-n * Q``.

    ``tail_bound`` is ``|r|**-n * Q / (1 - 1/|r|)``, the bound on
    ``d_H(S_n, S_m)`` for every ``m > n``.  With ``against_koch`` (only for
    ``D_{2,3,1}``) each row also carries ``d_H(S_n, koch_reference(n))``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if against_koch and (D.p, D.q, D.k) != (2, 3, 1):
        raise ValueError("the Koch comparison applies to D_{2,3,1} only")
    info = _regular_info(D)
    sets = _scaled_sets(D, range(0, n_max + 1), width)
    rlow = info.modulus.lower
    rows = []
    for n in range(n_max):
        bound = Fraction(info.Q) / rlow ** n
        tail = bound / (1 - 1 / rlow)
        koch = None
        if against_koch:
            koch = hausdorff_distance(sets[n], koch_reference(n), resolution)
        rows.append(ConvergenceRow(
            n, hausdorff_distance(sets[n], sets[n + 1], resolution), float(bound), float(tail), koch))
    return rows


def koch_reference(n: int) -> SegmentSet:
    """Level-n Koch polyline on ``[0, 1]`` from the four similarity maps.

    The bump points down (middle vertex ``1/2 - i*sqrt(3)/6`` at level 1),
    matching the orientation of ``D_{2,3,1}``.
    """
    if n < 0:
        raise ValueError("level must be non-negative")
    w = complex(0.5, -np.sqrt(3) / 2)
    maps = [(1 / 3, 0.0), (w / 3, 1 / 3), (w.conjugate() / 3, complex(0.5, -np.sqrt(3) / 6)), (1 / 3, 2 / 3)]
    pts = np.array([0.0, 1.0], dtype=complex)
    for _ in range(n):
        parts = [pts * a + c for a, c in maps]
        pts = np.concatenate([parts[0]] + [p[1:] for p in parts[1:]])
    return SegmentSet.from_points(pts, 16 * (n + 1) * _EPS)


@dataclass(frozen=True)
class SharedLimitRow:
    n: int
    steps: int
    to_target: ApproxDistance
    to_koch: ApproxDistance | None


def shared_limit_report(
    cert: MainResultCertificate,
    levels: range,
    resolution: float = 1e-3,
    width: Fraction | int = DEFAULT_WIDTH,
) -> list[SharedLimitRow]:
    """Scaled prefixes of a certified Thue-Morse curve against the target's limit approximants.

    With the composite witness ``c * T(k1 m) = R(k2 m)`` the set
    ``c * r**-n * P(T[:k1 * floor(Q**n / k2)])`` is compared with ``S_n`` of
    the target ``R`` (and with the Koch polyline when ``R = D_{2,3,1}``).
    """
    w = cert.composite
    R = cert.target
    info = _regular_info(R)
    sets = _scaled_sets(R, levels, width)
    is_koch = (R.p, R.q, R.k) == (2, 3, 1)
    top = w.k1 * (info.Q ** max(levels) // w.k2)
    _check_cap(top)
    tpoints = w.lhs.points(top)
    inv_r = info.r.inv()
    rows = []
    for n in levels:
        steps = w.k1 * (info.Q ** n // w.k2)
        if steps < 1:
            continue
        s = w.c * inv_r ** n
        pts = embed_batch([x * s for x in tpoints[: steps + 1]], width)
        X = SegmentSet.from_points(pts, float(width))
        to_koch = hausdorff_distance(X, koch_reference(n), resolution) if is_koch else None
        rows.append(SharedLimitRow(n, steps, hausdorff_distance(X, sets[n], resolution), to_koch))
    return rows
