"""Slow, independent reference computations on plain integer lists.

Nothing here touches the package's series or linear-algebra code.
"""

from __future__ import annotations

from fractions import Fraction


def poly_mul(a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        for j, y in enumerate(b[: prec - i]):
            out[i + j] += x * y
    return out


def factor_power(k, r, prec):
    """(1 - q^k)^r truncated; negative r through the geometric series."""
    base = [0] * prec
    if r >= 0:
        base[0] = 1
        one_minus = [0] * prec
        one_minus[0] = 1
        if k < prec:
            one_minus[k] = -1
        for _ in range(r):
            base = poly_mul(base, one_minus, prec)
        return base
    geo = [1 if n % k == 0 else 0 for n in range(prec)]
    base[0] = 1
    for _ in range(-r):
        base = poly_mul(base, geo, prec)
    return base


def eta_product(exponents, prec):
    """q^{sum d r / 24} prod_d prod_n (1 - q^{d n})^{r_d}, expanded factor by factor."""
    shift = Fraction(sum(d * r for d, r in exponents.items()), 24)
    assert shift.denominator == 1
    s = int(shift)
    series = [1] + [0] * (prec - 1)
    for d, r in exponents.items():
        n = 1
        while d * n < prec:
            series = poly_mul(series, factor_power(d * n, r, prec), prec)
            n += 1
    return ([0] * s + series)[:prec]


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein(k, prec):
    const = {4: 240, 6: -504}[k]
    return [1] + [const * sigma(k - 1, n) for n in range(1, prec)]


def v(series, d, prec):
    out = [0] * prec
    for n, x in enumerate(series):
        if d * n < prec:
            out[d * n] = x
    return out


def power(series, e, prec):
    out = [1] + [0] * (prec - 1)
    for _ in range(e):
        out = poly_mul(out, series, prec)
    return out


def evaluate_poly(terms, f, g, h, prec):
    """sum c X^a Y^b Z^c on integer lists, by repeated naive products."""
    total = [0] * prec
    for (a0, a1, a2), c in terms:
        prod = poly_mul(poly_mul(power(f, a0, prec), power(g, a1, prec), prec), power(h, a2, prec), prec)
        total = [t + c * p for t, p in zip(total, prod)]
    return total


def trial_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]
