"""Minimal homogeneous relation P(f, g, h) = 0 among three modular forms.

For a trial degree l, the unknown coefficients a_alpha of a degree-l
polynomial satisfy one linear equation per q-coefficient of
sum_alpha a_alpha f^a0 g^a1 h^a2.  Products have weight l*m, so by the Sturm
bound the equations for n = 0..sturm_bound(l*m, N) already cut out the exact
solution space.  The first l with a nontrivial solution gives P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import arith
from .forms import Form, independent
from .linalg import kernel, primitive
from .qseries import QSeries

Monomial = tuple[int, int, int]


class RelationError(RuntimeError):
    pass


class NotIndependentError(RelationError):
    def __init__(self, msg: str = "forms not independent"):
        super().__init__(msg)


class NoRelationError(RelationError):
    def __init__(self, msg: str = "no relation up to bound"):
        super().__init__(msg)


class KernelDimensionError(RelationError):
    def __init__(self, msg: str = "kernel dimension > 1 at minimal degree"):
        super().__init__(msg)


class InsufficientPrecision(ValueError):
    def __init__(self, msg: str = "insufficient precision"):
        super().__init__(msg)


def monomials(l: int) -> list[Monomial]:
    """All exponent triples of total degree l, (0,0,l) < (0,1,l-1) < ... < (l,0,0)."""
    if l < 1:
        raise ValueError(f"degree must be positive, got {l}")
    return [(a, b, l - a - b) for a in range(l + 1) for b in range(l - a + 1)]


def _display_key(alpha: Monomial) -> tuple[int, int]:
    # Ascending degree in Z, then descending degree in Y: the leading term is the
    # top x-power of Q(x, 0) where Q(x, y) = P(1, x, y).
    return (alpha[2], -alpha[1])


@dataclass(frozen=True)
class HomogPoly3:
    """Integer homogeneous polynomial in X, Y, Z (X <-> f, Y <-> g, Z <-> h)."""

    degree: int
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_vector(cls, degree: int, vector: Sequence) -> HomogPoly3:
        mons = monomials(degree)
        if len(vector) != len(mons):
            raise ValueError("vector length does not match the monomial count")
        return cls.from_terms(degree, zip(mons, vector))

    @classmethod
    def from_terms(cls, degree: int, terms) -> HomogPoly3:
        """Normalize: coprime integers, leading term (in display order) positive."""
        pairs = [(tuple(a), Fraction(c)) for a, c in terms if c]
        if not pairs:
            raise ValueError("zero polynomial")
        for a, _ in pairs:
            if sum(a) != degree or min(a) < 0:
                raise ValueError(f"monomial {a} is not of degree {degree}")
        pairs.sort(key=lambda t: _display_key(t[0]))
        ints = primitive([c for _, c in pairs])
        if ints[0] < 0:
            ints = [-x for x in ints]
        return cls(degree, tuple((a, c) for (a, _), c in zip(pairs, ints)))

    def coefficient(self, alpha: Monomial) -> int:
        return dict(self.terms).get(tuple(alpha), 0)

    def vector(self) -> list[int]:
        d = dict(self.terms)
        return [d.get(a, 0) for a in monomials(self.degree)]

    def monomial_list(self) -> list[list[int]]:
        """``[[a0, a1, a2, coeff], ...]`` in display order."""
        return [[*a, c] for a, c in self.terms]

    def evaluate(self, f: QSeries, g: QSeries, h: QSeries) -> QSeries:
        table = PowerTable(f, g, h)
        prec = table.prec
        total = QSeries.zero(prec)
        for a, c in self.terms:
            total = total + table.product(a).scale(c)
        return total

    def __str__(self) -> str:
        out = []
        for (a0, a1, a2), c in self.terms:
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip("XYZ", (a0, a1, a2)) if e
            )
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append(f"{sign} {body}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class PowerTable:
    """Memoized products f^a0 g^a1 h^a2 at a fixed precision."""

    def __init__(self, f: QSeries, g: QSeries, h: QSeries, prec: int | None = None):
        if prec is None:
            prec = min(f.prec, g.prec, h.prec)
        if min(f.prec, g.prec, h.prec) < prec:
            raise InsufficientPrecision()
        self.prec = prec
        self.bases = (f.truncate(prec), g.truncate(prec), h.truncate(prec))
        self._memo: dict[Monomial, QSeries] = {(0, 0, 0): QSeries.one(prec)}

    def product(self, alpha: Sequence[int]) -> QSeries:
        alpha = tuple(alpha)
        hit = self._memo.get(alpha)
        if hit is not None:
            return hit
        i = next(j for j in (2, 1, 0) if alpha[j])
        lower = list(alpha)
        lower[i] -= 1
        result = self.product(tuple(lower)) * self.bases[i]
        self._memo[alpha] = result
        return result


def _column(series: QSeries, rows: int) -> list:
    nums, den = series.scaled_integers()
    if den == 1:
        return list(nums[:rows])
    return [Fraction(x, den) for x in nums[:rows]]


def coefficient_matrix(f: QSeries, g: QSeries, h: QSeries, l: int, rows: int,
                       table: PowerTable | None = None) -> list[list]:
    """Entry (n, alpha) = q^n-coefficient of f^a0 g^a1 h^a2 for n < rows."""
    if min(f.prec, g.prec, h.prec) < rows:
        raise InsufficientPrecision()
    if table is None or table.prec < rows:
        table = PowerTable(f, g, h, rows)
    cols = [_column(table.product(a), rows) for a in monomials(l)]
    return [list(r) for r in zip(*cols)]


@dataclass(frozen=True)
class KernelResult:
    degree: int
    kernel_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    rows: int
    # (degree, rows, kernel dimension) for every degree tried, in order
    history: tuple[tuple[int, int, int], ...] = field(default=())


def relation_rows(l: int, weight: int, level: int, slack: int = 0) -> int:
    return arith.sturm_bound(l * weight, level) + 1 + slack


def degree_bound(weight: int, level: int) -> int:
    return weight * arith.index_mu(level) // 12


def find_min_relation(f: Form, g: Form, h: Form, level: int | None = None,
                      weight: int | None = None, *, slack: int = 0,
                      check_independence: bool = True) -> tuple[HomogPoly3, KernelResult]:
    """Minimal-degree P with P(f, g, h) identically zero, normalized."""
    level = f.level if level is None else level
    weight = f.weight if weight is None else weight
    top = degree_bound(weight, level)
    if top < 2:
        raise ValueError(f"weight {weight} on Gamma_0({level}) leaves no room for a plane curve")
    if check_independence and not independent([f, g, h], level, weight):
        raise NotIndependentError()
    prec = relation_rows(top, weight, level, slack)
    series = [x.q_expansion(prec) for x in (f, g, h)]
    return find_min_relation_series(*series, level=level, weight=weight, slack=slack)


def find_min_relation_series(f: QSeries, g: QSeries, h: QSeries, *, level: int, weight: int,
                             slack: int = 0, start: int = 2) -> tuple[HomogPoly3, KernelResult]:
    top = degree_bound(weight, level)
    need = relation_rows(top, weight, level, slack)
    table = PowerTable(f, g, h, min(need, f.prec, g.prec, h.prec))
    history = []
    for l in range(start, top + 1):
        rows = relation_rows(l, weight, level, slack)
        if table.prec < rows:
            raise InsufficientPrecision()
        basis = kernel(coefficient_matrix(f, g, h, l, rows, table), len(monomials(l)))
        history.append((l, rows, len(basis)))
        if not basis:
            continue
        if len(basis) > 1:
            raise KernelDimensionError()
        poly = HomogPoly3.from_vector(l, basis[0])
        res = KernelResult(l, 1, tuple(tuple(v) for v in basis), rows, tuple(history))
        return poly, res
    raise NoRelationError()


def kernel_at_degree(f: QSeries, g: QSeries, h: QSeries, l: int, rows: int) -> list[list[Fraction]]:
    return kernel(coefficient_matrix(f, g, h, l, rows), len(monomials(l)))


def verify_relation(poly: HomogPoly3, f: Form, g: Form, h: Form, slack: int = 0) -> bool:
    """P(f, g, h) vanishes to precision sturm_bound(l*m, N) + 1 + slack."""
    prec = relation_rows(poly.degree, f.weight, f.level, slack)
    value = poly.evaluate(*(x.q_expansion(prec) for x in (f, g, h)))
    return value.is_zero()


# -- the multinomial coefficient polynomials B_{alpha,n}(lambda) ---------------


def compositions(total: int, parts: int):
    """Nonnegative integer vectors of length ``parts`` summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def multinomial(total: int, parts: Sequence[int]) -> int:
    r = factorial(total)
    for p in parts:
        r //= factorial(p)
    return r


class BasisProducts:
    """Memoized products prod_j basis[j]^e_j at a fixed precision."""

    def __init__(self, basis: Sequence[QSeries], prec: int):
        if any(b.prec < prec for b in basis):
            raise InsufficientPrecision()
        self.basis = [b.truncate(prec) for b in basis]
        self.prec = prec
        self._memo: dict[tuple[int, ...], QSeries] = {(0,) * len(basis): QSeries.one(prec)}

    def product(self, exps: Sequence[int]) -> QSeries:
        exps = tuple(exps)
        hit = self._memo.get(exps)
        if hit is not None:
            return hit
        i = max(j for j, e in enumerate(exps) if e)
        lower = list(exps)
        lower[i] -= 1
        result = self.product(lower) * self.basis[i]
        self._memo[exps] = result
        return result


def b_coefficient_polynomial(basis: Sequence[QSeries], alpha: Monomial, n: int,
                             products: BasisProducts | None = None) -> dict[tuple[int, ...], Fraction]:
    """B_{alpha,n} as ``{lambda exponent vector: coefficient}``.

    With h = sum_j lambda_j basis[j] (basis[0] = f, basis[1] = g), the value
    B_{alpha,n}(lambda) is the q^n-coefficient of f^a0 g^a1 h^a2.
    """
    s = len(basis)
    if s < 2:
        raise ValueError("basis must contain at least f and g")
    if products is None:
        if any(b.prec <= n for b in basis):
            raise InsufficientPrecision()
        products = BasisProducts(basis, n + 1)
    elif products.prec <= n:
        raise InsufficientPrecision()
    a0, a1, a2 = alpha
    poly: dict[tuple[int, ...], Fraction] = {}
    for i in compositions(a2, s):
        exps = list(i)
        exps[0] += a0
        exps[1] += a1
        b = products.product(exps)[n]
        if b:
            poly[i] = multinomial(a2, i) * b
    return poly


def evaluate_polynomial(poly: dict[tuple[int, ...], Fraction], lam: Sequence) -> Fraction:
    total = Fraction(0)
    for exps, c in poly.items():
        term = Fraction(c)
        for x, e in zip(lam, exps):
            if e:
                term *= Fraction(x) ** e
        total += term
    return total


def b_matrix(basis: Sequence[QSeries], lam: Sequence, l: int, rows: int) -> list[list[Fraction]]:
    """The system matrix assembled from evaluated B-polynomials instead of direct products."""
    products = BasisProducts(basis, rows)
    return [
        [evaluate_polynomial(b_coefficient_polynomial(basis, a, n, products), lam) for a in monomials(l)]
        for n in range(rows)
    ]
