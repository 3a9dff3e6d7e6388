"""The turtle group, interpreters, turtle curves and their polylines.

A turtle state or instruction is a pair ``(z, u)``: a position/translation
``z`` (a :class:`CycNumber`) and a heading/rotation ``u`` (a
:class:`RootOfUnity`).  The group law translates first, then rotates::

    (z1, u1) + (z2, u2) = (z1 + u1*z2, u1*u2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._numtheory import lcm
from .cyclotomic import DEFAULT_WIDTH, CycNumber, RootOfUnity, _field, embed_batch
from .words import SequenceSpec, Word

__all__ = [
    "GroupElement",
    "IDENTITY",
    "Interpreter",
    "TurtleCurve",
    "SegmentSet",
    "g_add",
    "s_word",
    "p_word",
    "alpha_word",
    "curve_point",
    "polyline",
]


def _as_cyc(z) -> CycNumber:
    if isinstance(z, CycNumber):
        return z
    return CycNumber.rational(z)


def _as_root(u) -> RootOfUnity:
    if isinstance(u, RootOfUnity):
        return u
    if u == 1:
        return RootOfUnity(1, 0)
    if u == -1:
        return RootOfUnity(2, 1)
    raise TypeError(f"heading must be a RootOfUnity, got {u!r}")


@dataclass(frozen=True)
class GroupElement:
    z: CycNumber
    u: RootOfUnity

    def __post_init__(self):
        object.__setattr__(self, "z", _as_cyc(self.z))
        object.__setattr__(self, "u", _as_root(self.u))

    def __add__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(self.z + other.z * self.u.to_cyc(), self.u * other.u)

    def __neg__(self) -> GroupElement:
        inv_u = self.u.inverse()
        return GroupElement(-(self.z * inv_u.to_cyc()), inv_u)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)


IDENTITY = GroupElement(CycNumber.zero(), RootOfUnity(1, 0))


def g_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


@dataclass(frozen=True)
class Interpreter:
    """Assigns a turtle instruction to every symbol of an alphabet."""

    images: tuple[GroupElement, ...]

    def __post_init__(self):
        imgs = tuple(g if isinstance(g, GroupElement) else GroupElement(*g) for g in self.images)
        if not imgs:
            raise ValueError("an interpreter needs at least one image")
        object.__setattr__(self, "images", imgs)

    @property
    def alphabet_size(self) -> int:
        return len(self.images)

    @property
    def is_absolute(self) -> bool:
        return all(g.u.order == 1 for g in self.images)

    @property
    def conductor(self) -> int:
        return lcm(*(g.z.m for g in self.images), *(g.u.order for g in self.images))

    def __getitem__(self, symbol: int) -> GroupElement:
        return self.images[symbol]


def _symbols_of(interp: Interpreter, w: Word | Iterable[int]) -> list[int]:
    syms = w.tolist() if isinstance(w, Word) else [int(a) for a in w]
    for a in syms:
        if not 0 <= a < interp.alphabet_size:
            raise ValueError(f"symbol {a} outside the interpreter's alphabet")
    return syms


def s_word(interp: Interpreter, w: Word | Iterable[int]) -> GroupElement:
    """Group sum of the interpreted symbols of ``w``, left to right."""
    total = IDENTITY
    for a in _symbols_of(interp, w):
        total = total + interp.images[a]
    return total


def p_word(interp: Interpreter, w) -> CycNumber:
    return s_word(interp, w).z


def alpha_word(interp: Interpreter, w) -> RootOfUnity:
    # headings multiply, no need for the full group sum
    u = RootOfUnity(1, 0)
    for a in _symbols_of(interp, w):
        u = u * interp.images[a].u
    return u


@dataclass(frozen=True)
class TurtleCurve:
    """A sequence paired with an interpreter; ``T(n)`` is the position after n steps."""

    sequence: SequenceSpec
    interp: Interpreter
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.interp.alphabet_size != self.sequence.alphabet_size:
            raise ValueError(
                f"interpreter covers {self.interp.alphabet_size} symbols, "
                f"sequence {self.sequence} uses {self.sequence.alphabet_size}"
            )

    @property
    def is_thue_morse(self) -> bool:
        return self.sequence.kind == "thue_morse"

    def _raw_scan(self, n: int) -> Iterator[tuple[int, ...]]:
        """Integer coefficient vectors of ``T(0..n)`` over ``Q(zeta_M)``, scaled by a common denominator."""
        images = self.interp.images
        M = self.interp.conductor
        F = _field(M)
        den = lcm(*(g.z.den for g in images))
        base = [tuple(c * (den // g.z.den) for c in g.z.lift(M).nums) for g in images]
        turn = [g.u.exponent_in(M) for g in images]
        A = len(images)
        cache: dict[int, tuple[int, ...]] = {}
        pos = (0,) * F.degree
        h = 0
        yield pos
        if n == 0:
            return
        for a in self.sequence.prefix(n).tolist():
            key = h * A + a
            step = cache.get(key)
            if step is None:
                step = tuple(F.mul(base[a], F.powers[h])) if h else base[a]
                cache[key] = step
            pos = tuple([x + y for x, y in zip(pos, step)])
            h = (h + turn[a]) % M
            yield pos

    def scan(self, n: int) -> Iterator[CycNumber]:
        """Yield ``T(0), T(1), ..., T(n)`` with O(1) group operations per step."""
        if n < 0:
            raise ValueError("n must be non-negative")
        M = self.interp.conductor
        den = lcm(*(g.z.den for g in self.interp.images))
        for vec in self._raw_scan(n):
            yield CycNumber._make(M, vec, den) if den == 1 else CycNumber(M, vec, den)

    def points(self, n: int) -> list[CycNumber]:
        return list(self.scan(n))

    def point(self, n: int) -> CycNumber:
        last = None
        for last in self.scan(n):
            pass
        return last

    def sample(self, stride: int, count: int) -> list[CycNumber]:
        """``[T(0), T(stride), ..., T(stride*count)]``."""
        if stride < 1:
            raise ValueError("stride must be positive")
        return [v for i, v in enumerate(self.scan(stride * count)) if i % stride == 0]

    def __str__(self) -> str:
        return self.name or f"TurtleCurve({self.sequence})"


def curve_point(T: TurtleCurve, n: int) -> CycNumber:
    return T.point(n)


@dataclass(frozen=True, eq=False)
class SegmentSet:
    """Finite union of plane segments ``[starts[i], ends[i]]``.

    ``error_budget`` bounds how far any stored endpoint may sit from the
    exact point it stands for.
    """

    starts: np.ndarray
    ends: np.ndarray
    error_budget: float = 0.0

    def __post_init__(self):
        s = np.asarray(self.starts, dtype=complex).ravel()
        e = np.asarray(self.ends, dtype=complex).ravel()
        if s.shape != e.shape:
            raise ValueError("starts and ends must match")
        s.flags.writeable = False
        e.flags.writeable = False
        object.__setattr__(self, "starts", s)
        object.__setattr__(self, "ends", e)
        object.__setattr__(self, "error_budget", float(self.error_budget))

    @classmethod
    def from_points(cls, points: Sequence[complex], error_budget: float = 0.0) -> SegmentSet:
        pts = np.asarray(points, dtype=complex)
        if pts.size == 1:
            return cls(pts, pts, error_budget)
        return cls(pts[:-1], pts[1:], error_budget)

    def __len__(self) -> int:
        return int(self.starts.size)

    @property
    def vertices(self) -> np.ndarray:
        if len(self) == 0:
            return self.starts
        return np.concatenate([self.starts, self.ends[-1:]])

    def transformed(self, scale: complex = 1, shift: complex = 0) -> SegmentSet:
        return SegmentSet(self.starts * scale + shift, self.ends * scale + shift, self.error_budget * abs(scale))


def polyline(T: TurtleCurve, n: int, width: Fraction | int = DEFAULT_WIDTH) -> SegmentSet:
    """Segments ``T(i) -> T(i+1)`` for ``i < n`` with endpoints embedded within ``width``."""
    if n < 1:
        raise ValueError("a polyline needs at least one step")
    pts = embed_batch(T.points(n), width)
    return SegmentSet.from_points(pts, float(width))
