"""Integer helpers: primality, factorization, divisors, Moebius function.

All of these use trial division; inputs are desk-scale.
"""

from functools import lru_cache
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{prime: exponent}`` of a positive integer."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return dict(_factor(n))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in _factor(n)]


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in _factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(t: int) -> int:
    """Moebius function: 0 on non-squarefree t, else (-1)^(number of prime factors)."""
    if t < 1:
        raise ValueError("mobius is defined for positive integers")
    fac = _factor(t)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def multiplicative_order(g_pow, order: int) -> int:
    """Order of an element of a cyclic group of the given order.

    ``g_pow(k)`` must return True when the element raised to k is the identity.
    """
    m = order
    for p, e in _factor(order):
        for _ in range(e):
            if m % p == 0 and g_pow(m // p):
                m //= p
            else:
                break
    return m
