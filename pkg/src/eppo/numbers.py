"""Small number-theoretic helpers on top of sympy.ntheory."""

from __future__ import annotations

from math import gcd

from sympy.ntheory import factorint, isprime, n_order

__all__ = [
    "factorint",
    "isprime",
    "prime_divisors",
    "p_part",
    "prime_power_base",
    "is_prime_power",
    "multiplicative_order",
]


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def prime_power_base(n: int) -> int | None:
    """Return ``p`` if ``n = p**k`` with ``k >= 1``, else None."""
    if n < 2:
        return None
    f = factorint(n)
    if len(f) != 1:
        return None
    return next(iter(f))


def is_prime_power(n: int) -> bool:
    """True for 1 and for every ``p**k``; the element-order sense of the word."""
    return n == 1 or prime_power_base(n) is not None


def multiplicative_order(r: int, m: int) -> int:
    """Least ``e >= 1`` with ``r**e == 1 (mod m)``."""
    if m == 1:
        return 1
    if gcd(r, m) != 1:
        raise ValueError(f"{r} is not a unit modulo {m}")
    return int(n_order(r % m, m))
