"""Similarity witnesses between turtle curves and the chain to a Dekking curve.

A witness ``(c, k1, k2, lhs, rhs)`` claims ``c * lhs(k1*n) == rhs(k2*n)`` for
every n.  :func:`check_witness` verifies the claim exactly up to a depth.
The constructions here turn a Thue-Morse turtle curve over ``t_2`` into an
absolute curve over a Dekking sequence, then into a Dekking curve, then into
a regular Dekking curve with odd ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from ._numtheory import split_power, totient
from .curves import DekkingCurve, dekking_point, scaling_info
from .cyclotomic import CycNumber, RootOfUnity, root
from .turtle import GroupElement, Interpreter, TurtleCurve, alpha_word, p_word
from .words import SequenceSpec, thue_morse_morphism

__all__ = [
    "HypothesisError",
    "SimilarityWitness",
    "WitnessReport",
    "AbsoluteCurve",
    "Reduction",
    "MainResultCertificate",
    "check_witness",
    "compose_witnesses",
    "invert_witness",
    "identity_witness",
    "tmc_to_absolute",
    "absolute_to_dekking",
    "dekking_reduce",
    "certify_main_result",
    "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 1000


class HypothesisError(ValueError):
    """A construction's hypothesis does not hold; ``reason`` is a short code."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _turtle(curve) -> TurtleCurve:
    if isinstance(curve, TurtleCurve):
        return curve
    t = getattr(curve, "turtle", None)
    if isinstance(t, TurtleCurve):
        return t
    raise TypeError(f"not a curve: {curve!r}")


@dataclass(frozen=True)
class SimilarityWitness:
    c: CycNumber
    k1: int
    k2: int
    lhs: TurtleCurve
    rhs: TurtleCurve

    def __post_init__(self):
        c = self.c if isinstance(self.c, CycNumber) else CycNumber.rational(self.c)
        if c.is_zero():
            raise ValueError("similarity constant must be nonzero")
        if self.k1 < 1 or self.k2 < 1:
            raise ValueError("strides must be positive")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "lhs", _turtle(self.lhs))
        object.__setattr__(self, "rhs", _turtle(self.rhs))

    def __str__(self) -> str:
        return f"({self.c!r}) * {self.lhs}({self.k1}n) = {self.rhs}({self.k2}n)"


@dataclass(frozen=True)
class WitnessReport:
    witness: SimilarityWitness
    n_max: int
    first_failure: int | None

    @property
    def passed(self) -> bool:
        return self.first_failure is None


def identity_witness(curve) -> SimilarityWitness:
    return SimilarityWitness(CycNumber.one(), 1, 1, curve, curve)


def check_witness(w: SimilarityWitness, n_max: int = DEFAULT_DEPTH) -> WitnessReport:
    """Exact check of ``c * lhs(k1 n) == rhs(k2 n)`` for ``0 <= n <= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    left = w.lhs.sample(w.k1, n_max)
    right = w.rhs.sample(w.k2, n_max)
    for n, (a, b) in enumerate(zip(left, right)):
        if w.c * a != b:
            return WitnessReport(w, n_max, n)
    return WitnessReport(w, n_max, None)


def compose_witnesses(w1: SimilarityWitness, w2: SimilarityWitness) -> SimilarityWitness:
    """Transitivity: from ``T1 ~ T2`` and ``T2 ~ T3`` build ``T1 ~ T3``."""
    if w1.rhs != w2.lhs:
        raise ValueError(f"middle curves differ: {w1.rhs} vs {w2.lhs}")
    return SimilarityWitness(w1.c * w2.c, w1.k1 * w2.k1, w1.k2 * w2.k2, w1.lhs, w2.rhs)


def invert_witness(w: SimilarityWitness) -> SimilarityWitness:
    return SimilarityWitness(w.c.inv(), w.k2, w.k1, w.rhs, w.lhs)


@dataclass(frozen=True)
class AbsoluteCurve:
    """Absolute curve over ``z_{p,q}`` with steps ``coeffs[x] * zeta_q**(k*y)``."""

    p: int
    q: int
    k: int
    coeffs: tuple[CycNumber, ...]

    @cached_property
    def turtle(self) -> TurtleCurve:
        images = []
        for x in range(self.p):
            for y in range(self.q):
                images.append(GroupElement(self.coeffs[x] * root(self.q, self.k * y), RootOfUnity(1, 0)))
        return TurtleCurve(SequenceSpec.dekking(self.p, self.q), Interpreter(tuple(images)), str(self))

    def __str__(self) -> str:
        return f"B_{{{self.p},{self.q},{self.k}}}"


def _tm_parameters(T: TurtleCurve) -> tuple[int, RootOfUnity]:
    if not T.is_thue_morse:
        raise HypothesisError("not-thue-morse", f"{T} is not driven by a Thue-Morse sequence")
    p = T.sequence.p
    return p, alpha_word(T.interp, thue_morse_morphism(p).image(0))


def tmc_to_absolute(T: TurtleCurve) -> tuple[AbsoluteCurve, SimilarityWitness]:
    """Absolute curve ``B`` with ``T(p n) = B(n)``.

    The total turn over ``phi(0)`` is read off as ``zeta_q**k`` in lowest
    terms, so ``gcd(k, q) = 1`` holds by construction.
    """
    p, alpha = _tm_parameters(T)
    q, k = alpha.order, alpha.exponent
    if q < 2:
        raise HypothesisError(
            "q-is-1", f"{T}: heading after phi(0) is 1, so q would be 1 (need q >= 2)")
    if gcd(k, q) != 1:
        raise HypothesisError("gcd", f"{T}: k={k} and q={q} are not coprime")
    phi = thue_morse_morphism(p)
    coeffs = tuple(p_word(T.interp, phi.image(x)) for x in range(p))
    B = AbsoluteCurve(p, q, k, coeffs)
    return B, SimilarityWitness(CycNumber.one(), p, 1, T, B.turtle)


def absolute_to_dekking(B: AbsoluteCurve) -> tuple[DekkingCurve, SimilarityWitness]:
    """Witness ``(2/(c0-c1)) * B(q n) = D_{2,q,k}(q n)``."""
    if B.p != 2:
        raise HypothesisError("p-not-2", f"{B}: this step only works for p = 2")
    c0, c1 = B.coeffs
    if c0 == c1:
        raise HypothesisError("equal-images", f"{B}: c0 == c1 == {c0!r}")
    D = DekkingCurve(2, B.q, B.k)
    return D, SimilarityWitness(2 / (c0 - c1), B.q, B.q, B.turtle, D.turtle)


@dataclass(frozen=True)
class Reduction:
    target: DekkingCurve
    witness: SimilarityWitness
    d: int
    b: int


def dekking_reduce(D: DekkingCurve, target_k1: int | None = None) -> Reduction:
    """Relate ``D = D_{p, q*p**b, k2}`` to ``R = D_{p, q, k1}``.

    Searches ``d`` in ``0..totient(q)`` for ``k1 = p**d * k2 (mod q)``.  With
    no ``target_k1`` the smallest ``d`` giving a regular ``R`` wins.  The
    witness states ``D(p**(d+b)) * R(n) = D(p**(d+b) * n)``.
    """
    p = D.p
    b, q = split_power(D.q, p)
    k2 = D.k
    if q < 2:
        raise HypothesisError("q-is-1", f"{D}: q = {D.q} is a pure power of {p}")
    if gcd(D.q, k2) != 1:
        raise HypothesisError("gcd", f"{D}: gcd(q*p^b, k2) != 1")
    chosen = None
    for d in range(totient(q) + 1):
        k1 = (pow(p, d) * k2) % q
        if target_k1 is not None:
            if (k1 - target_k1) % q == 0:
                chosen = (d, k1)
                break
        elif scaling_info(DekkingCurve(p, q, k1)).regular:
            chosen = (d, k1)
            break
    if chosen is None:
        if target_k1 is not None:
            raise HypothesisError(
                "no-d", f"{D}: no d in 0..{totient(q)} with {target_k1} = {p}^d * {k2} (mod {q})")
        raise HypothesisError("not-regular", f"{D}: no reachable D_{{{p},{q},k1}} is regular")
    d, k1 = chosen
    R = DekkingCurve(p, q, k1)
    c = dekking_point(D, p ** (d + b))
    if c.is_zero():
        raise HypothesisError("zero-constant", f"{D}({p ** (d + b)}) = 0, no similarity")
    return Reduction(R, SimilarityWitness(c, 1, p ** (d + b), R.turtle, D.turtle), d, b)


@dataclass(frozen=True)
class MainResultCertificate:
    """Chain ``T ~ B ~ D_{2, 2^b q, k2} ~ D_{2, q, k1}`` with its exact checks."""

    curve: TurtleCurve
    b: int
    q: int
    k2: int
    d: int
    k1: int
    absolute: AbsoluteCurve
    intermediate: DekkingCurve
    target: DekkingCurve
    chain: tuple[SimilarityWitness, ...]
    composite: SimilarityWitness
    reports: tuple[WitnessReport, ...]
    n_max: int
    target_regular: bool
    r: CycNumber = field(repr=False)

    @property
    def verified(self) -> bool:
        return self.target_regular and all(rep.passed for rep in self.reports)

    @property
    def koch(self) -> bool:
        """True when the shared limit is the Koch curve (q = 3)."""
        return self.q == 3 and self.target_regular


def certify_main_result(
    T: TurtleCurve, n_max: int = DEFAULT_DEPTH, target_k1: int | None = None
) -> MainResultCertificate:
    """Build and verify the similarity chain from a ``t_2`` turtle curve to a
    regular Dekking curve.

    Raises :class:`HypothesisError` naming the first hypothesis that fails;
    a witness that fails its exact check is reported, not raised.
    """
    p, alpha = _tm_parameters(T)
    if p != 2:
        raise HypothesisError("p-not-2", f"{T}: only t_2 curves are covered, got p={p}")
    m, k2 = alpha.order, alpha.exponent
    b, q = split_power(m, 2)
    if q == 1:
        raise HypothesisError(
            "q-is-1",
            f"{T}: heading after phi(0) has order {m}, a pure power of 2 (q = 1)")
    if gcd(k2, q) != 1:
        raise HypothesisError("gcd", f"{T}: gcd(k2={k2}, q={q}) != 1")
    phi = thue_morse_morphism(2)
    if p_word(T.interp, phi.image(0)) == p_word(T.interp, phi.image(1)):
        raise HypothesisError("equal-images", f"{T}: P_T(phi(0)) == P_T(phi(1))")

    B, w_tb = tmc_to_absolute(T)
    D, w_bd = absolute_to_dekking(B)
    red = dekking_reduce(D, target_k1)
    info = scaling_info(red.target)
    if not info.regular:
        raise HypothesisError("not-regular", f"target {red.target} is not regular (r = {info.r!r})")
    w_dr = invert_witness(red.witness)
    chain = (w_tb, w_bd, w_dr)
    composite = compose_witnesses(compose_witnesses(w_tb, w_bd), w_dr)
    reports = tuple(check_witness(w, n_max) for w in chain + (composite,))
    return MainResultCertificate(
        curve=T, b=b, q=q, k2=k2, d=red.d, k1=red.target.k,
        absolute=B, intermediate=D, target=red.target,
        chain=chain, composite=composite, reports=reports, n_max=n_max,
        target_regular=info.regular, r=info.r,
    )
