"""Integer invariants of Gamma_0(N): divisors, index, cusp classes, Sturm bounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with increasing ``p``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return tuple(small + large)


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def index_mu(n: int) -> int:
    """[SL_2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p)."""
    result = n
    for p, _ in factorize(n):
        result = result // p * (p + 1)
    return result


def sturm_bound(k: int, n: int) -> int:
    """Coefficients a_0..a_B vanishing force a weight-k form on Gamma_0(N) to be zero."""
    if k < 2 or k % 2:
        raise ValueError(f"Sturm bound needs an even weight >= 2, got {k}")
    return k * index_mu(n) // 12


@dataclass(frozen=True)
class CuspClass:
    """Cusps of Gamma_0(N) with denominator ``c``; all share the same width."""

    c: int
    count: int
    width: int


@lru_cache(maxsize=None)
def cusp_classes(n: int) -> tuple[CuspClass, ...]:
    out = []
    for c in divisors(n):
        g = gcd(c, n // c)
        out.append(CuspClass(c=c, count=totient(g), width=n // (c * g)))
    return tuple(out)
