"""Truncated power series in q with exact rational coefficients.

A :class:`QSeries` knows the coefficients of q^0 .. q^(prec-1) and nothing
beyond.  Every binary operation returns a series whose precision is the
minimum of its operands' precisions, so a computed coefficient is always a
true coefficient of the exact (infinite) series.

Internally a series is stored as an integer vector together with one common
positive denominator; this keeps convolutions in machine-friendly integer
arithmetic even when rational scalars appear.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "QSeries",
    "add",
    "mul",
    "scale",
    "power",
    "order",
    "euler_power",
    "eisenstein",
    "v_operator",
    "pentagonal_product",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def _content(values: Iterable[int], start: int = 0) -> int:
    g = start
    for v in values:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    return g


def _convolve(a: Sequence[int], b: Sequence[int], prec: int) -> list[int]:
    res = [0] * prec
    for i in range(min(prec, len(a))):
        ai = a[i]
        if not ai:
            continue
        lim = min(prec - i, len(b))
        for j in range(lim):
            bj = b[j]
            if bj:
                res[i + j] += ai * bj
    return res


class QSeries:
    """Exact truncated q-series ``sum_{n < prec} a_n q^n``."""

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs: Iterable = (), prec: int | None = None):
        fracs = [_as_fraction(c) for c in coeffs]
        if prec is None:
            prec = len(fracs)
        if prec < 0:
            raise ValueError("precision must be nonnegative")
        fracs = fracs[:prec] + [Fraction(0)] * (prec - len(fracs))
        den = 1
        for c in fracs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = tuple(c.numerator * (den // c.denominator) for c in fracs)
        self._num = num
        self._den = den

    @classmethod
    def _raw(cls, num: Sequence[int], den: int = 1) -> QSeries:
        if den < 0:
            num, den = [-x for x in num], -den
        if den != 1:
            g = _content(num, den)
            if g > 1:
                num = [x // g for x in num]
                den //= g
        obj = cls.__new__(cls)
        obj._num = tuple(num)
        obj._den = den
        return obj

    @classmethod
    def one(cls, prec: int) -> QSeries:
        return cls._raw([1] + [0] * (prec - 1)) if prec > 0 else cls._raw([])

    @classmethod
    def zero(cls, prec: int) -> QSeries:
        return cls._raw([0] * prec)

    @classmethod
    def monomial(cls, n: int, prec: int, coeff=1) -> QSeries:
        c = _as_fraction(coeff)
        num = [0] * prec
        if n < prec:
            num[n] = c.numerator
        return cls._raw(num, c.denominator)

    # -- inspection ---------------------------------------------------

    @property
    def prec(self) -> int:
        return len(self._num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    def integer_coeffs(self) -> tuple[int, ...] | None:
        """The coefficients as ints, or None when some coefficient is not integral."""
        return self._num if self._den == 1 else None

    def scaled_integers(self) -> tuple[tuple[int, ...], int]:
        """``(numerators, denominator)`` with coefficient n equal to numerators[n]/denominator."""
        return self._num, self._den

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient {n} is beyond precision {self.prec}")
        return Fraction(self._num[n], self._den)

    def __len__(self) -> int:
        return self.prec

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __repr__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*q^{n}" if n else str(c))
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.prec}))"

    def order(self) -> int | None:
        """Index of the first nonzero coefficient; None if zero to precision."""
        for n, x in enumerate(self._num):
            if x:
                return n
        return None

    def is_zero(self) -> bool:
        return not any(self._num)

    def truncate(self, prec: int) -> QSeries:
        if prec > self.prec:
            raise ValueError(f"cannot extend precision {self.prec} to {prec}")
        return QSeries._raw(self._num[:prec], self._den)

    def agrees_with(self, other: QSeries) -> bool:
        """Equality of coefficients up to the shared precision."""
        p = min(self.prec, other.prec)
        return self.truncate(p) == other.truncate(p)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            try:
                other = QSeries.monomial(0, self.prec, other)
            except TypeError:
                return NotImplemented
        p = min(self.prec, other.prec)
        if self._den == other._den:
            num = [a + b for a, b in zip(self._num[:p], other._num[:p])]
            return QSeries._raw(num, self._den)
        d1, d2 = self._den, other._den
        num = [a * d2 + b * d1 for a, b in zip(self._num[:p], other._num[:p])]
        return QSeries._raw(num, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries._raw([-x for x in self._num], self._den)

    def __sub__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return self + (-other)
        return self + (-_as_fraction(other))

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def scale(self, r) -> QSeries:
        r = _as_fraction(r)
        return QSeries._raw([x * r.numerator for x in self._num], self._den * r.denominator)

    def __mul__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            p = min(self.prec, other.prec)
            return QSeries._raw(_convolve(self._num, other._num, p), self._den * other._den)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QSeries:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {e!r}")
        result = QSeries.one(self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def reciprocal(self) -> QSeries:
        """Exact truncated inverse; needs a nonzero constant term."""
        num, den = self._num, self._den
        if not num or num[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        a0 = num[0]
        if a0 in (1, -1) and den == 1:
            inv = [0] * len(num)
            inv[0] = a0
            for n in range(1, len(num)):
                s = 0
                for k in range(1, n + 1):
                    if num[k]:
                        s += num[k] * inv[n - k]
                inv[n] = -s * a0
            return QSeries._raw(inv)
        coeffs = self.coeffs
        inv = [Fraction(1) / coeffs[0]]
        for n in range(1, len(coeffs)):
            s = sum(coeffs[k] * inv[n - k] for k in range(1, n + 1) if coeffs[k])
            inv.append(-s * inv[0])
        return QSeries(inv)

    def shift(self, k: int, prec: int | None = None) -> QSeries:
        """Multiply by q^k (k >= 0); known precision grows by k unless capped."""
        if k < 0:
            raise ValueError("negative shifts would fabricate coefficients")
        num = [0] * k + list(self._num)
        if prec is not None:
            if prec > len(num):
                raise ValueError(f"shifted series only known to precision {len(num)}")
            num = num[:prec]
        return QSeries._raw(num, self._den)

    def v(self, d: int, prec: int | None = None) -> QSeries:
        return v_operator(self, d, prec)


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def scale(a: QSeries, r) -> QSeries:
    return a.scale(r)


def power(a: QSeries, e: int) -> QSeries:
    return a ** e


def order(a: QSeries) -> int | None:
    return a.order()


def v_operator(a: QSeries, d: int, prec: int | None = None) -> QSeries:
    """f(z) -> f(dz): coefficient n moves to index d*n."""
    if d < 1:
        raise ValueError(f"v_operator needs d >= 1, got {d}")
    out_prec = d * a.prec
    if prec is not None:
        out_prec = min(out_prec, prec)
    num = [0] * out_prec
    for n, x in enumerate(a._num):
        if d * n >= out_prec:
            break
        num[d * n] = x
    return QSeries._raw(num, a._den)


@lru_cache(maxsize=64)
def pentagonal_product(prec: int) -> QSeries:
    """prod_{n>=1} (1 - q^n) via Euler's pentagonal number theorem."""
    num = [0] * prec
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < prec:
                num[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return QSeries._raw(num)


@lru_cache(maxsize=1024)
def euler_power(delta: int, r: int, prec: int) -> QSeries:
    """(prod_{n>=1} (1 - q^(delta*n)))^r to precision ``prec``."""
    if prec < 1:
        raise ValueError("precision must be positive")
    if delta < 1:
        raise ValueError(f"delta must be positive, got {delta}")
    inner = -(-prec // delta)
    if r == 0:
        return QSeries.one(prec)
    base = pentagonal_product(inner)
    if r < 0:
        base = _partitions(inner)
    series = base ** abs(r)
    return v_operator(series, delta, prec)


@lru_cache(maxsize=64)
def _partitions(prec: int) -> QSeries:
    return pentagonal_product(prec).reciprocal()


def _bernoulli(k: int) -> Fraction:
    from sympy import bernoulli

    b = bernoulli(k)
    return Fraction(int(b.p), int(b.q))


@lru_cache(maxsize=None)
def _eisenstein_constant(k: int) -> Fraction:
    return Fraction(-2 * k) / _bernoulli(k)


@lru_cache(maxsize=256)
def eisenstein(k: int, prec: int) -> QSeries:
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if not isinstance(k, int) or k < 4 or k % 2:
        raise ValueError(f"unsupported Eisenstein weight {k}")
    if prec < 1:
        raise ValueError("precision must be positive")
    sigma = [0] * prec
    for d in range(1, prec):
        dk = d ** (k - 1)
        for n in range(d, prec, d):
            sigma[n] += dk
    c = _eisenstein_constant(k)
    coeffs = [Fraction(1)] + [c * s for s in sigma[1:]]
    return QSeries(coeffs)
