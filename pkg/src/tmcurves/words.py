"""Words over finite alphabets, uniform morphisms and the three sequence families.

Symbols are plain non-negative integers.  A product symbol ``(x, y)`` of
``Z/pZ x Z/qZ`` is stored as the single integer ``x*q + y``; use
:func:`encode_pair` / :func:`decode_pair` to move between the two forms.

Words are backed by read-only numpy arrays so that prefixes of a few hundred
million symbols stay affordable (one byte per symbol for alphabets up to 256).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._numtheory import totient

__all__ = [
    "Word",
    "UniformMorphism",
    "SequenceSpec",
    "tm_symbol",
    "digit_sum",
    "periodic_symbol",
    "dekking_symbol",
    "encode_pair",
    "decode_pair",
    "thue_morse_morphism",
    "delta_morphism",
    "mu_morphism",
    "lambda_morphism",
    "fixed_point_prefix",
]


def _dtype_for(alphabet_size: int) -> type:
    if alphabet_size <= 1 << 8:
        return np.uint8
    if alphabet_size <= 1 << 16:
        return np.uint16
    return np.uint32


def _check_base(name: str, value: int) -> None:
    if value < 2:
        raise ValueError(f"{name} must be >= 2, got {value}")


class Word:
    """Immutable finite word over ``{0, ..., alphabet_size - 1}``."""

    __slots__ = ("_symbols", "alphabet_size")

    def __init__(self, symbols: Iterable[int] | np.ndarray, alphabet_size: int):
        if alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        arr = np.asarray(
            symbols if isinstance(symbols, np.ndarray) else list(symbols),
            dtype=np.int64,
        )
        if arr.ndim != 1:
            raise ValueError("a word is one-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= alphabet_size):
            raise ValueError(f"symbol out of range for alphabet of size {alphabet_size}")
        self._symbols = arr.astype(_dtype_for(alphabet_size))
        self._symbols.flags.writeable = False
        self.alphabet_size = alphabet_size

    @classmethod
    def _trusted(cls, arr: np.ndarray, alphabet_size: int) -> Word:
        w = cls.__new__(cls)
        w._symbols = arr.astype(_dtype_for(alphabet_size), copy=False)
        w._symbols.flags.writeable = False
        w.alphabet_size = alphabet_size
        return w

    @property
    def symbols(self) -> np.ndarray:
        return self._symbols

    def __len__(self) -> int:
        return int(self._symbols.size)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word._trusted(self._symbols[index], self.alphabet_size)
        return int(self._symbols[index])

    def __iter__(self) -> Iterator[int]:
        return iter(self._symbols.tolist())

    def __add__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        size = max(self.alphabet_size, other.alphabet_size)
        return Word._trusted(
            np.concatenate([self._symbols.astype(np.int64), other._symbols.astype(np.int64)]),
            size,
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Word):
            return self.alphabet_size == other.alphabet_size and np.array_equal(
                self._symbols, other._symbols
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.alphabet_size, self._symbols.astype(np.int64).tobytes()))

    def tolist(self) -> list[int]:
        return self._symbols.tolist()

    def __repr__(self) -> str:
        body = self.tolist()
        if len(body) > 32:
            return f"Word({body[:32]}... len={len(body)}, alphabet_size={self.alphabet_size})"
        return f"Word({body}, alphabet_size={self.alphabet_size})"


class UniformMorphism:
    """A k-uniform substitution on ``{0, ..., alphabet_size - 1}``.

    ``images[a]`` is the image of symbol ``a``; all images share the same
    length ``k`` (the arity).
    """

    __slots__ = ("_table", "alphabet_size")

    def __init__(self, images: Sequence[Iterable[int] | Word], alphabet_size: int | None = None):
        rows = [list(img) for img in images]
        if not rows:
            raise ValueError("a morphism needs at least one image")
        if alphabet_size is None:
            alphabet_size = len(rows)
        if len(rows) != alphabet_size:
            raise ValueError(f"expected {alphabet_size} images, got {len(rows)}")
        k = len(rows[0])
        if k < 1 or any(len(r) != k for r in rows):
            raise ValueError("all images of a uniform morphism must have the same positive length")
        table = np.array(rows, dtype=np.int64)
        if table.min() < 0 or table.max() >= alphabet_size:
            raise ValueError("image symbol outside the alphabet")
        self._table = table
        self._table.flags.writeable = False
        self.alphabet_size = alphabet_size

    @property
    def arity(self) -> int:
        return int(self._table.shape[1])

    @property
    def images(self) -> tuple[Word, ...]:
        return tuple(Word._trusted(row, self.alphabet_size) for row in self._table)

    def image(self, symbol: int) -> Word:
        return Word._trusted(self._table[symbol], self.alphabet_size)

    def apply(self, word: Word | Iterable[int]) -> Word:
        if not isinstance(word, Word):
            word = Word(word, self.alphabet_size)
        if len(word) == 0:
            return Word._trusted(np.zeros(0, dtype=np.int64), self.alphabet_size)
        return Word._trusted(self._table[word.symbols].ravel(), self.alphabet_size)

    def __call__(self, arg):
        if isinstance(arg, (int, np.integer)):
            return self.image(int(arg))
        return self.apply(arg)

    def power(self, j: int) -> UniformMorphism:
        """The j-fold composite, a ``k**j``-uniform morphism."""
        if j < 1:
            raise ValueError("power must be >= 1")
        rows = []
        for a in range(self.alphabet_size):
            w = self.image(a)
            for _ in range(j - 1):
                w = self.apply(w)
            rows.append(w.symbols)
        return UniformMorphism(rows, self.alphabet_size)

    def is_prolongable(self, symbol: int) -> bool:
        return self.arity >= 2 and int(self._table[symbol, 0]) == symbol

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniformMorphism):
            return self.alphabet_size == other.alphabet_size and np.array_equal(
                self._table, other._table
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.alphabet_size, self._table.tobytes()))

    def __repr__(self) -> str:
        imgs = ", ".join(f"{a}->{''.join(map(str, row))}" if self.alphabet_size <= 10 else f"{a}->{list(row)}"
                         for a, row in enumerate(self._table.tolist()))
        return f"UniformMorphism({imgs})"


def fixed_point_prefix(m: UniformMorphism, seed: int, length: int) -> Word:
    """First ``length`` symbols of the fixed point of ``m`` starting at ``seed``.

    Grows the prefix by whole-word substitution, only substituting as much of
    the current prefix as the next round needs.  Peak memory is about
    ``2 * length`` symbols.
    """
    if m.arity < 2:
        raise ValueError("fixed points need a morphism of arity >= 2")
    if not 0 <= seed < m.alphabet_size:
        raise ValueError(f"seed {seed} outside the alphabet")
    if not m.is_prolongable(seed):
        raise ValueError(f"morphism is not prolongable on {seed}")
    if length < 0:
        raise ValueError("length must be non-negative")
    k = m.arity
    w = np.array([seed], dtype=np.int64)
    table = m._table
    while w.size < length:
        need = -(-length // k)
        w = table[w[:need]].ravel()
    return Word._trusted(w[:length], m.alphabet_size)


# -- sequences --------------------------------------------------------------


def digit_sum(p: int, n: int) -> int:
    """Sum of the base-``p`` digits of ``n``."""
    _check_base("p", p)
    if n < 0:
        raise ValueError("n must be non-negative")
    s = 0
    while n:
        n, d = divmod(n, p)
        s += d
    return s


def tm_symbol(p: int, n: int) -> int:
    """n-th term of the generalised Thue-Morse sequence over ``p`` symbols.

    Uses the base-``p`` digit sum reduced mod ``p`` so any index costs
    O(log n).
    """
    return digit_sum(p, n) % p


def periodic_symbol(q: int, n: int) -> int:
    _check_base("q", q)
    if n < 0:
        raise ValueError("n must be non-negative")
    return n % q


def encode_pair(x: int, y: int, q: int) -> int:
    return x * q + y


def decode_pair(symbol: int, q: int) -> tuple[int, int]:
    return divmod(int(symbol), q)


def dekking_symbol(p: int, q: int, n: int) -> int:
    """``(t_p(n), n mod q)`` encoded as ``t_p(n)*q + n mod q``."""
    _check_base("q", q)
    return encode_pair(tm_symbol(p, n), n % q, q)


# -- morphisms --------------------------------------------------------------


def thue_morse_morphism(p: int) -> UniformMorphism:
    """``a -> a, a+1, ..., a+p-1`` (mod p)."""
    _check_base("p", p)
    return UniformMorphism([[(a + j) % p for j in range(p)] for a in range(p)], p)


def _coprime_pair(p: int, q: int) -> int:
    _check_base("p", p)
    _check_base("q", q)
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} must be coprime")
    return p ** totient(q)


def delta_morphism(p: int, q: int) -> UniformMorphism:
    """Q-uniform morphism on ``Z/qZ`` whose fixed point from 0 is ``n mod q``."""
    Q = _coprime_pair(p, q)
    base = np.arange(Q, dtype=np.int64) % q
    return UniformMorphism([(base + a) % q for a in range(q)], q)


def mu_morphism(p: int, q: int) -> UniformMorphism:
    """``phi ** totient(q)`` for the Thue-Morse morphism ``phi`` on ``Z/pZ``."""
    _coprime_pair(p, q)
    return thue_morse_morphism(p).power(totient(q))


def lambda_morphism(p: int, q: int) -> UniformMorphism:
    """Q-uniform morphism on ``Z/pZ x Z/qZ`` pairing ``mu`` and ``delta`` letter by letter."""
    mu = mu_morphism(p, q)._table
    delta = delta_morphism(p, q)._table
    rows = [mu[x] * q + delta[y] for x in range(p) for y in range(q)]
    return UniformMorphism(rows, p * q)


@dataclass(frozen=True)
class SequenceSpec:
    """One of the three sequence families: ``thue_morse``, ``periodic`` or ``dekking``."""

    kind: str
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.kind == "thue_morse":
            if self.p is None or self.q is not None:
                raise ValueError("thue_morse takes p only")
            _check_base("p", self.p)
        elif self.kind == "periodic":
            if self.q is None or self.p is not None:
                raise ValueError("periodic takes q only")
            _check_base("q", self.q)
        elif self.kind == "dekking":
            if self.p is None or self.q is None:
                raise ValueError("dekking takes p and q")
            _check_base("p", self.p)
            _check_base("q", self.q)
        else:
            raise ValueError(f"unknown sequence kind {self.kind!r}")

    @classmethod
    def thue_morse(cls, p: int) -> SequenceSpec:
        return cls("thue_morse", p=p)

    @classmethod
    def periodic(cls, q: int) -> SequenceSpec:
        return cls("periodic", q=q)

    @classmethod
    def dekking(cls, p: int, q: int) -> SequenceSpec:
        return cls("dekking", p=p, q=q)

    @property
    def alphabet_size(self) -> int:
        if self.kind == "thue_morse":
            return self.p
        if self.kind == "periodic":
            return self.q
        return self.p * self.q

    def symbol(self, n: int) -> int:
        if self.kind == "thue_morse":
            return tm_symbol(self.p, n)
        if self.kind == "periodic":
            return periodic_symbol(self.q, n)
        return dekking_symbol(self.p, self.q, n)

    def prefix(self, length: int) -> Word:
        """First ``length`` symbols.  Works for non-coprime ``(p, q)`` too."""
        if length < 0:
            raise ValueError("length must be non-negative")
        if self.kind == "periodic":
            return Word._trusted(np.arange(length, dtype=np.int64) % self.q, self.q)
        tm = fixed_point_prefix(thue_morse_morphism(self.p), 0, length).symbols.astype(np.int64)
        if self.kind == "thue_morse":
            return Word._trusted(tm, self.p)
        return Word._trusted(tm * self.q + np.arange(length, dtype=np.int64) % self.q, self.p * self.q)

    def __str__(self) -> str:
        if self.kind == "thue_morse":
            return f"t_{self.p}"
        if self.kind == "periodic":
            return f"f_{self.q}"
        return f"z_{{{self.p},{self.q}}}"
