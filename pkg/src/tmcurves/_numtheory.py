"""Small integer helpers shared by several modules."""

from __future__ import annotations

from math import gcd


def totient(q: int) -> int:
    """Euler's totient of ``q`` by trial-division factorisation."""
    if q < 1:
        raise ValueError(f"totient needs q >= 1, got {q}")
    result = q
    n = q
    f = 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            result -= result // f
        f += 1
    if n > 1:
        result -= result // n
    return result


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def split_power(n: int, p: int) -> tuple[int, int]:
    """Write ``n = p**b * rest`` with ``p`` not dividing ``rest``; return ``(b, rest)``."""
    b = 0
    while n % p == 0:
        n //= p
        b += 1
    return b, n


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
