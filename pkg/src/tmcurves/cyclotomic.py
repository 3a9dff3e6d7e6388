"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A :class:`CycNumber` is a vector of rationals over the power basis
``1, zeta_m, ..., zeta_m**(phi(m)-1)`` reduced modulo the m-th cyclotomic
polynomial.  Coefficients are kept as integer numerators over one positive
common denominator, so the representation is canonical for a fixed conductor
and most curve arithmetic never touches :class:`fractions.Fraction`.

Operands with different conductors are lifted to the lcm.  Results are not
shrunk back to the minimal conductor; call :meth:`CycNumber.minimal` for that.

Floating-point values are only ever produced through :func:`embed` and
:func:`embed_batch`, which return certified error bounds.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from mpmath import iv
from mpmath.libmp import to_rational

from ._numtheory import divisors, lcm

__all__ = [
    "CycNumber",
    "RootOfUnity",
    "ModulusInterval",
    "cyclotomic_polynomial",
    "root",
    "embed",
    "embed_batch",
    "certified_sign",
    "DEFAULT_WIDTH",
]

DEFAULT_WIDTH = Fraction(1, 10**12)

Rational = int | Fraction


# -- cyclotomic polynomials and per-conductor tables ------------------------


def _divide_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _divide_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Field:
    """Lookup tables for Q(zeta_m): reduced powers of zeta and float basis."""

    def __init__(self, m: int):
        phi = cyclotomic_polynomial(m)
        n = len(phi) - 1
        self.m = m
        self.degree = n
        powers = []
        vec = [1] + [0] * (n - 1)
        for _ in range(m):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(n):
                    vec[i] -= top * phi[i]
        self.powers: list[tuple[int, ...]] = powers
        self.phi = phi
        self._float_basis = None

    def reduce(self, coeffs: Sequence[int]) -> list[int]:
        """Reduce a polynomial in zeta (any length) to the power basis."""
        n, m, powers = self.degree, self.m, self.powers
        out = list(coeffs[:n]) + [0] * max(0, n - len(coeffs))
        for j in range(n, len(coeffs)):
            c = coeffs[j]
            if c:
                v = powers[j % m]
                for i in range(n):
                    if v[i]:
                        out[i] += c * v[i]
        return out

    def mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        n = self.degree
        if n == 1:
            return [a[0] * b[0]]
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.reduce(prod)

    def float_basis(self):
        """Float cos/sin of the basis angles with rigorous per-entry error bounds."""
        if self._float_basis is None:
            lo_c, hi_c, lo_s, hi_s = _trig_enclosures(self.m, 160)
            cos_f = np.array([float((a + b) / 2) for a, b in zip(lo_c, hi_c)])
            sin_f = np.array([float((a + b) / 2) for a, b in zip(lo_s, hi_s)])
            err_c = np.array([_round_up(max(abs(Fraction(f) - a), abs(b - Fraction(f))))
                              for f, a, b in zip(cos_f, lo_c, hi_c)])
            err_s = np.array([_round_up(max(abs(Fraction(f) - a), abs(b - Fraction(f))))
                              for f, a, b in zip(sin_f, lo_s, hi_s)])
            self._float_basis = (cos_f, sin_f, err_c, err_s)
        return self._float_basis


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


def _round_up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else math.nextafter(f, math.inf)


_iv_lock = threading.Lock()


@lru_cache(maxsize=256)
def _trig_enclosures(m: int, prec: int):
    """Rational enclosures of cos and sin of 2*pi*j/m for j < phi(m)."""
    n = len(cyclotomic_polynomial(m)) - 1
    lo_c, hi_c, lo_s, hi_s = [], [], [], []
    with _iv_lock:
        saved = iv.prec
        iv.prec = prec
        try:
            for j in range(n):
                angle = iv.mpf(2 * j) * iv.pi / m
                for val, lo, hi in ((iv.cos(angle), lo_c, hi_c), (iv.sin(angle), lo_s, hi_s)):
                    a, b = val._mpi_
                    lo.append(Fraction(*to_rational(a)))
                    hi.append(Fraction(*to_rational(b)))
        finally:
            iv.prec = saved
    return tuple(lo_c), tuple(hi_c), tuple(lo_s), tuple(hi_s)


# -- roots of unity ---------------------------------------------------------


@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2*pi*i*exponent/order)`` stored in lowest terms.

    ``RootOfUnity(6, 2) == RootOfUnity(3, 1)``; the identity is ``(1, 0)``.
    """

    order: int
    exponent: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        e = self.exponent % self.order
        g = gcd(e, self.order)
        object.__setattr__(self, "order", self.order // g)
        object.__setattr__(self, "exponent", e // g)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        m = lcm(self.order, other.order)
        return RootOfUnity(m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(self.order, -self.exponent)

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.order, self.exponent * k)

    def exponent_in(self, m: int) -> int:
        """Exponent ``e`` with ``self == zeta_m**e``; requires ``order | m``."""
        if m % self.order:
            raise ValueError(f"root of order {self.order} is not an m-th root for m={m}")
        return self.exponent * (m // self.order)

    def to_cyc(self) -> CycNumber:
        return root(self.order, self.exponent)

    def __repr__(self) -> str:
        return f"RootOfUnity({self.order}, {self.exponent})"


# -- cyclotomic numbers -----------------------------------------------------


class CycNumber:
    """Exact element of Q(zeta_m)."""

    __slots__ = ("m", "nums", "den", "_hash")

    def __init__(self, m: int, nums: Iterable[int], den: int = 1):
        f = _field(m)
        nums = tuple(int(c) for c in nums)
        if len(nums) != f.degree:
            raise ValueError(f"Q(zeta_{m}) has degree {f.degree}, got {len(nums)} coefficients")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums, den = tuple(-c for c in nums), -den
        if den != 1:
            g = gcd(den, *nums)
            if g != 1:
                nums, den = tuple(c // g for c in nums), den // g
        self.m = m
        self.nums = nums
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, m: int, nums: tuple[int, ...], den: int) -> CycNumber:
        if den == 1:
            obj = cls.__new__(cls)
            obj.m, obj.nums, obj.den, obj._hash = m, nums, 1, None
            return obj
        return cls(m, nums, den)

    @classmethod
    def rational(cls, x: Rational, m: int = 1) -> CycNumber:
        x = Fraction(x)
        n = _field(m).degree
        return cls(m, (x.numerator,) + (0,) * (n - 1), x.denominator)

    @classmethod
    def from_coefficients(cls, m: int, coeffs: Sequence[Rational]) -> CycNumber:
        """Value ``sum coeffs[j] * zeta_m**j``; any length, reduced automatically."""
        fr = [Fraction(c) for c in coeffs]
        den = lcm(*(c.denominator for c in fr)) if fr else 1
        ints = [int(c * den) for c in fr]
        return cls(m, _field(m).reduce(ints), den)

    @classmethod
    def zero(cls, m: int = 1) -> CycNumber:
        return cls.rational(0, m)

    @classmethod
    def one(cls, m: int = 1) -> CycNumber:
        return cls.rational(1, m)

    # -- structure --------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def lift(self, M: int) -> CycNumber:
        """The same value expressed in Q(zeta_M); needs ``m | M``."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot lift conductor {self.m} to {M}")
        F = _field(M)
        step = M // self.m
        out = [0] * F.degree
        for j, c in enumerate(self.nums):
            if c:
                v = F.powers[(j * step) % M]
                for i in range(F.degree):
                    if v[i]:
                        out[i] += c * v[i]
        return CycNumber._make(M, tuple(out), self.den)

    def minimal(self) -> CycNumber:
        """The same value over the smallest conductor whose field contains it."""
        if self.is_rational():
            return CycNumber(1, (self.nums[0],), self.den)
        target = self.coefficients
        for d in divisors(self.m)[:-1]:
            sol = _solve_in_subfield(self.m, d, target)
            if sol is not None:
                return CycNumber.from_coefficients(d, sol)
        return self

    def _align(self, other) -> tuple[CycNumber, CycNumber]:
        other = _coerce(other)
        if other is None:
            raise TypeError
        if self.m == other.m:
            return self, other
        M = lcm(self.m, other.m)
        return self.lift(M), other.lift(M)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycNumber._make(a.m, tuple(x + y for x, y in zip(a.nums, b.nums)), a.den) \
                if a.den == 1 else CycNumber(a.m, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return CycNumber(a.m, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> CycNumber:
        return CycNumber._make(self.m, tuple(-c for c in self.nums), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return CycNumber(self.m, [c * other for c in self.nums], self.den)
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        prod = _field(a.m).mul(a.nums, b.nums)
        return CycNumber(a.m, prod, a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> CycNumber:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNumber.rational(1 / self.to_fraction(), self.m)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        a = _trim([Fraction(c, self.den) for c in self.nums])
        s = _poly_inverse_mod(a, phi)
        return CycNumber.from_coefficients(self.m, s)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int) -> CycNumber:
        if k < 0:
            return self.inv() ** (-k)
        result = CycNumber.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, j: int) -> CycNumber:
        """Apply the automorphism ``zeta_m -> zeta_m**j`` (``gcd(j, m) = 1``)."""
        if gcd(j, self.m) != 1:
            raise ValueError(f"{j} is not a unit mod {self.m}")
        F = _field(self.m)
        out = [0] * F.degree
        for i, c in enumerate(self.nums):
            if c:
                v = F.powers[(i * j) % self.m]
                for t in range(F.degree):
                    if v[t]:
                        out[t] += c * v[t]
        return CycNumber._make(self.m, tuple(out), self.den)

    def conj(self) -> CycNumber:
        return self.galois(-1)

    def abs2(self) -> CycNumber:
        """``self * conj(self)``, a real cyclotomic number."""
        return self * self.conj()

    def rotate(self, e: int) -> CycNumber:
        """``self * zeta_m**e`` without a general multiplication."""
        F = _field(self.m)
        return CycNumber._make(self.m, tuple(F.mul(self.nums, F.powers[e % self.m])), self.den) \
            if self.den == 1 else CycNumber(self.m, F.mul(self.nums, F.powers[e % self.m]), self.den)

    def mul_matrix(self) -> tuple[np.ndarray, int]:
        """Integer matrix ``A`` and denominator ``d`` with ``(self*x).nums = A @ x.nums / d``."""
        F = _field(self.m)
        cols = [F.mul(self.nums, F.powers[j]) for j in range(F.degree)]
        return np.array(cols, dtype=object).T, self.den

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.m == other.m:
            return self.den == other.den and self.nums == other.nums
        a, b = self._align(other)
        return a.den == b.den and a.nums == b.nums

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                h = hash(Fraction(self.nums[0], self.den))
            else:
                mn = self.minimal()
                h = hash((mn.m, mn.nums, mn.den))
            self._hash = h
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- numerics ---------------------------------------------------------

    def embed(self, width: Rational = DEFAULT_WIDTH) -> tuple[complex, ModulusInterval]:
        return embed(self, width)

    def __complex__(self) -> complex:
        return embed(self)[0]

    def modulus_interval(self, width: Rational = DEFAULT_WIDTH) -> ModulusInterval:
        return embed(self, width)[1]

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycNumber({self.to_fraction()})"
        terms = []
        for j, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z{self.m}^{j}")
        return "CycNumber(" + " + ".join(terms) + ")"


def _coerce(x) -> CycNumber | None:
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return CycNumber.rational(x)
    return None


def root(m: int, e: int = 1) -> CycNumber:
    """``zeta_m ** e`` in Q(zeta_m)."""
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    return CycNumber._make(m, _field(m).powers[e % m], 1)


# -- polynomial helpers over Q ----------------------------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if len(a) < len(b):
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q, _trim(a[: len(b) - 1])


def _poly_sub_mul(s0: list[Fraction], q: list[Fraction], s1: list[Fraction]) -> list[Fraction]:
    out = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(s1):
                out[i + j] -= x * y
    return _trim(out)


def _poly_inverse_mod(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    r0, r1 = list(mod), list(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    return [x / c for x in s0]


def _solve_in_subfield(m: int, d: int, target: Sequence[Fraction]) -> list[Fraction] | None:
    """Coefficients over Q(zeta_d) of ``target`` (given in Q(zeta_m)), or None."""
    F, sub = _field(m), _field(d)
    step = m // d
    cols = [F.powers[(j * step) % m] for j in range(sub.degree)]
    rows = [[Fraction(cols[c][r]) for c in range(sub.degree)] + [Fraction(target[r])]
            for r in range(F.degree)]
    ncol = sub.degree
    piv_row = 0
    pivots = []
    for c in range(ncol):
        p = next((r for r in range(piv_row, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            continue
        rows[piv_row], rows[p] = rows[p], rows[piv_row]
        pv = rows[piv_row][c]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(len(rows)):
            if r != piv_row and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_row])]
        pivots.append(c)
        piv_row += 1
    if any(rows[r][-1] != 0 for r in range(piv_row, len(rows))):
        return None
    sol = [Fraction(0)] * ncol
    for r, c in enumerate(pivots):
        sol[c] = rows[r][-1]
    return sol


# -- certified embedding ----------------------------------------------------


@dataclass(frozen=True)
class ModulusInterval:
    """Exact rational bounds ``lower <= |x| <= upper``."""

    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper


def _sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    if x < 0:
        x = Fraction(0)
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        s = Fraction(rn, rd)
        return s, s
    scale = 1 << (2 * bits)
    lo = math.isqrt(math.floor(x * scale))
    hi = math.isqrt(math.ceil(x * scale))
    if hi * hi < x * scale:
        hi += 1
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def _box(a: CycNumber, prec: int):
    lo_c, hi_c, lo_s, hi_s = _trig_enclosures(a.m, prec)
    re_lo = re_hi = im_lo = im_hi = Fraction(0)
    for c, lc, hc, ls, hs in zip(a.nums, lo_c, hi_c, lo_s, hi_s):
        if c > 0:
            re_lo += c * lc; re_hi += c * hc; im_lo += c * ls; im_hi += c * hs
        elif c < 0:
            re_lo += c * hc; re_hi += c * lc; im_lo += c * hs; im_hi += c * ls
    d = a.den
    return re_lo / d, re_hi / d, im_lo / d, im_hi / d


def embed(a: CycNumber, width: Rational = DEFAULT_WIDTH) -> tuple[complex, ModulusInterval]:
    """Float approximation of ``a`` with absolute error below ``width``, plus a
    :class:`ModulusInterval` for ``|a|`` narrower than ``width``.

    Works with rational interval enclosures of the basis, raising the working
    precision until the enclosing box is small enough.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if a.is_rational():
        x = a.to_fraction()
        f = float(x)
        if abs(Fraction(f) - x) >= width:
            raise ValueError("requested width is below float resolution for this value")
        return complex(f, 0.0), ModulusInterval(abs(x), abs(x))

    scale = sum(abs(c) for c in a.nums) / Fraction(a.den)
    prec = max(64, int(math.log2(float(scale) / float(width) + 1)) + 16)
    while True:
        re_lo, re_hi, im_lo, im_hi = _box(a, prec)
        if re_hi - re_lo < width / 8 and im_hi - im_lo < width / 8:
            break
        prec *= 2
    re_mid, im_mid = (re_lo + re_hi) / 2, (im_lo + im_hi) / 2
    z = complex(float(re_mid), float(im_mid))
    err = (abs(Fraction(z.real) - re_mid) + (re_hi - re_lo) / 2
           + abs(Fraction(z.imag) - im_mid) + (im_hi - im_lo) / 2)
    if err >= width:
        raise ValueError("requested width is below float resolution for this value")

    n2 = a.abs2()
    bits = max(64, int(-math.log2(float(width))) + 8)
    if n2.is_rational():
        lo, hi = _sqrt_bounds(n2.to_fraction(), bits)
        return z, ModulusInterval(lo, hi)
    lo2 = (0 if re_lo <= 0 <= re_hi else min(re_lo * re_lo, re_hi * re_hi)) + \
          (0 if im_lo <= 0 <= im_hi else min(im_lo * im_lo, im_hi * im_hi))
    hi2 = max(re_lo * re_lo, re_hi * re_hi) + max(im_lo * im_lo, im_hi * im_hi)
    lo = _sqrt_bounds(Fraction(lo2), bits)[0]
    hi = _sqrt_bounds(Fraction(hi2), bits)[1]
    return z, ModulusInterval(lo, hi)


def certified_sign(a: CycNumber) -> int:
    """Sign of a real cyclotomic number, decided exactly.

    ``a`` must equal its own conjugate.  The enclosing interval shrinks
    geometrically, so the loop terminates for every nonzero input.
    """
    if a.conj() != a:
        raise ValueError("certified_sign needs a real value")
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.to_fraction() > 0 else -1
    prec = 64
    while True:
        re_lo, re_hi, _, _ = _box(a, prec)
        if re_lo > 0:
            return 1
        if re_hi < 0:
            return -1
        prec *= 2


_U = 2.0**-53


def embed_batch(values: Sequence[CycNumber], width: Rational = DEFAULT_WIDTH) -> np.ndarray:
    """Embed many values at once; every entry is certified within ``width``.

    Values are lifted to a common conductor and evaluated against a float
    basis whose entries carry rigorous error bounds; a standard a-priori
    rounding bound is checked per entry and anything that fails it goes
    through :func:`embed` instead.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if len(values) == 0:
        return np.zeros(0, dtype=complex)
    M = lcm(*{v.m for v in values})
    lifted = [v.lift(M) for v in values]
    F = _field(M)
    nums = [v.nums for v in lifted]
    big = max(max((abs(c) for c in row), default=0) for row in nums)
    if big >= 2**52 or max(v.den for v in lifted) >= 2**52:
        return np.array([embed(v, width)[0] for v in lifted], dtype=complex)
    C = np.array(nums, dtype=np.float64).reshape(len(nums), F.degree)
    dens = np.array([v.den for v in lifted], dtype=np.float64)
    cos_f, sin_f, err_c, err_s = F.float_basis()
    n = F.degree
    gamma = n * _U / (1 - n * _U)
    absC = np.abs(C)
    re = (C @ cos_f) / dens
    im = (C @ sin_f) / dens
    bound_re = (gamma * (absC @ np.abs(cos_f)) + absC @ err_c) / dens + _U * np.abs(re)
    bound_im = (gamma * (absC @ np.abs(sin_f)) + absC @ err_s) / dens + _U * np.abs(im)
    bound = (bound_re + bound_im) * (1 + 1e-6) + 1e-300
    out = re + 1j * im
    bad = np.nonzero(bound >= float(width) * (1 - 1e-9))[0]
    for i in bad:
        out[i] = embed(lifted[i], width)[0]
    return out
