"""Dekking curves, their scaling factor and the self-similar fast evaluator."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

from ._numtheory import lcm, totient
from .cyclotomic import CycNumber, ModulusInterval, RootOfUnity, certified_sign, root
from .turtle import GroupElement, Interpreter, TurtleCurve
from .words import SequenceSpec, tm_symbol

__all__ = [
    "DekkingCurve",
    "ScalingInfo",
    "dekking_point",
    "dekking_point_fast",
    "scaling_info",
    "totient",
    "thue_morse_curve",
    "segment_cap",
]

DEFAULT_SEGMENT_CAP = 1 << 24
SEGMENT_CAP_ENV = "TMCURVES_SEGMENT_CAP"


def segment_cap() -> int:
    """Largest number of curve steps a single scan may take (env-overridable)."""
    raw = os.environ.get(SEGMENT_CAP_ENV)
    if raw is None:
        return DEFAULT_SEGMENT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{SEGMENT_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{SEGMENT_CAP_ENV} must be positive")
    return cap


def thue_morse_curve(p: int, images, name: str = "") -> TurtleCurve:
    """Turtle curve over ``t_p`` with ``images[a] = (z, u)`` for each symbol."""
    return TurtleCurve(SequenceSpec.thue_morse(p), Interpreter(tuple(images)), name)


@dataclass(frozen=True)
class DekkingCurve:
    """Absolute curve over ``z_{p,q}`` stepping by ``zeta_p**x * zeta_q**(k*y)``."""

    p: int
    q: int
    k: int = 1

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise ValueError(f"Dekking curves need p, q >= 2, got p={self.p}, q={self.q}")
        if gcd(self.k, self.q) != 1:
            raise ValueError(f"k={self.k} must be coprime to q={self.q}")
        object.__setattr__(self, "k", self.k % self.q)

    @property
    def coprime(self) -> bool:
        return gcd(self.p, self.q) == 1

    @property
    def Q(self) -> int:
        return self.p ** totient(self.q)

    @property
    def conductor(self) -> int:
        return lcm(self.p, self.q)

    def step_exponent(self, x: int, y: int) -> int:
        L = self.conductor
        return (x * (L // self.p) + self.k * y * (L // self.q)) % L

    def step(self, symbol: int) -> CycNumber:
        """``P_D`` of one symbol of ``z_{p,q}``; always a root of unity."""
        x, y = divmod(symbol, self.q)
        return root(self.conductor, self.step_exponent(x, y))

    @cached_property
    def turtle(self) -> TurtleCurve:
        images = tuple(
            GroupElement(self.step(s), RootOfUnity(1, 0)) for s in range(self.p * self.q)
        )
        return TurtleCurve(SequenceSpec.dekking(self.p, self.q), Interpreter(images), str(self))

    def __str__(self) -> str:
        return f"D_{{{self.p},{self.q},{self.k}}}"


def _check_steps(N: int) -> None:
    cap = segment_cap()
    if N > cap:
        raise MemoryError(f"{N} steps exceeds the segment cap of {cap} (set {SEGMENT_CAP_ENV})")


def dekking_point(D: DekkingCurve, N: int) -> CycNumber:
    """Exact ``D(N)`` by scanning the first N steps (no coprimality needed)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    _check_steps(N)
    return D.turtle.point(N)


def _require_coprime(D: DekkingCurve) -> None:
    if not D.coprime:
        raise ValueError(f"{D}: gcd(p, q) = {gcd(D.p, D.q)} != 1, no scaling theory")


@lru_cache(maxsize=64)
def _block_table(D: DekkingCurve) -> tuple[CycNumber, ...]:
    _check_steps(D.Q)
    return tuple(D.turtle.scan(D.Q))


def dekking_point_fast(D: DekkingCurve, N: int) -> CycNumber:
    """Exact ``D(N)`` in O(log N) group operations.

    Splits N in base Q and uses ``D(Q*n + s) = r*D(n) + P_D(z(n)) * D(s)`` for
    ``s < Q``, which follows from ``t_p(Q*n + s) = t_p(n) + t_p(s)`` and
    ``Q = 1 (mod q)``.  Needs the Q+1 prefix values ``D(0..Q)`` once per curve.
    """
    _require_coprime(D)
    if N < 0:
        raise ValueError("N must be non-negative")
    Q = D.Q
    table = _block_table(D)
    r = table[Q]
    digits = []
    while N:
        N, d = divmod(N, Q)
        digits.append(d)
    L = D.conductor
    value = CycNumber.zero(L)
    n = 0
    for d in reversed(digits):
        head = D.step_exponent(tm_symbol(D.p, n), n % D.q)
        value = r * value + table[d].rotate(head)
        n = n * Q + d
    return value


def _dekking_point_digits(D: DekkingCurve, N: int) -> CycNumber:
    """``D(N)`` via base-p digits, tracking the frequency ``k*p**l mod q``.

    Used for the scaling factor when Q is too large to scan; needs no
    coprimality.
    """
    p, q = D.p, D.q
    L = D.conductor
    zp, zq = L // p, L // q
    digits = []
    while N:
        N, d = divmod(N, p)
        digits.append(d)

    def partial(j: int, s: int) -> CycNumber:
        # sum_{r<s} zeta_p^r zeta_q^(j r)
        F = CycNumber.zero(L)
        for rr in range(s):
            F = F + root(L, rr * zp + j * rr * zq)
        return F

    G = CycNumber.zero(L)
    m = 0
    for level in range(len(digits) - 1, -1, -1):
        j = (D.k * pow(p, level, q)) % q
        s = digits[level]
        G = G * partial(j, p) + partial(j, s).rotate(tm_symbol(p, m) * zp + j * p * m * zq)
        m = m * p + s
    return G


@dataclass(frozen=True)
class ScalingInfo:
    Q: int
    r: CycNumber
    regular: bool
    modulus: ModulusInterval


def scaling_info(D: DekkingCurve) -> ScalingInfo:
    """Scaling factor ``r = D(Q)`` with a certified regularity flag ``|r| > 1``."""
    _require_coprime(D)
    Q = D.Q
    if Q <= segment_cap():
        r = dekking_point(D, Q)
    else:
        r = _dekking_point_digits(D, Q)
    regular = certified_sign(r.abs2() - 1) > 0
    return ScalingInfo(Q, r, regular, r.modulus_interval())
