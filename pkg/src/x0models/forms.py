"""Modular forms on Gamma_0(N) built from eta quotients and Eisenstein series.

Eta quotients carry exact orders at every cusp (Ligozat's formula).  Forms
with Eisenstein factors only have exact orders at infinity, or everywhere
when N = 1 since there is a single cusp.  Combinations of eta quotients get
an exact order wherever a single atom is strictly lowest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Mapping, Sequence

from . import arith
from .linalg import rank
from .qseries import QSeries, eisenstein, euler_power, v_operator


class FormError(ValueError):
    """A form description does not define a modular form with trivial character."""


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class EtaValidation:
    weight: int
    orders: dict[int, Fraction]


@dataclass(frozen=True)
class EtaQuotient:
    """prod_{delta | N} eta(delta z)^{r_delta}.

    ``exponents`` is normalized to a sorted tuple of ``(delta, r)`` pairs with
    r != 0; a mapping or any iterable of pairs is accepted.
    """

    level: int
    exponents: tuple[tuple[int, int], ...]

    def __init__(self, level: int, exponents: Mapping[int, int] | Iterable[Sequence[int]]):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[int, int] = {}
        for delta, r in items:
            delta, r = int(delta), int(r)
            if delta < 1 or level % delta:
                raise FormError(f"eta exponent key {delta} does not divide level {level}")
            acc[delta] = acc.get(delta, 0) + r
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exponents", tuple(sorted((d, r) for d, r in acc.items() if r)))

    def r(self, delta: int) -> int:
        return dict(self.exponents).get(delta, 0)

    def at_level(self, level: int) -> EtaQuotient:
        if level % self.level:
            raise FormError(f"cannot move level {self.level} eta quotient to level {level}")
        return EtaQuotient(level, self.exponents)

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        n = self.level * other.level // gcd(self.level, other.level)
        return EtaQuotient(n, list(self.exponents) + list(other.exponents))

    @property
    def weight2(self) -> int:
        """Twice the weight."""
        return sum(r for _, r in self.exponents)

    @property
    def weight(self) -> int:
        if self.weight2 % 2:
            raise FormError("non-integral weight")
        return self.weight2 // 2

    @property
    def infinity_order(self) -> Fraction:
        return Fraction(sum(d * r for d, r in self.exponents), 24)

    def cusp_order(self, c: int) -> Fraction:
        """Order at a cusp with denominator ``c`` in the local parameter of X_0(N)."""
        n = self.level
        if c < 1 or n % c:
            raise ValueError(f"{c} is not a divisor of {n}")
        s = sum(Fraction(gcd(c, d) ** 2 * r, d) for d, r in self.exponents)
        return Fraction(n, 24 * gcd(c * c, n)) * s

    def cusp_orders(self) -> dict[int, Fraction]:
        return {c: self.cusp_order(c) for c in arith.divisors(self.level)}

    def validate(self) -> EtaValidation:
        k = self.weight
        n = self.level
        if sum(d * r for d, r in self.exponents) % 24 or sum(n // d * r for d, r in self.exponents) % 24:
            raise FormError("Ligozat congruence failed")
        prod = Fraction(1)
        for d, r in self.exponents:
            prod *= Fraction(d) ** r
        if not _is_rational_square((-1) ** k * prod):
            raise FormError("character not certified trivial")
        orders = self.cusp_orders()
        for c, o in orders.items():
            if o < 0:
                raise FormError(f"not holomorphic at cusp c={c}")
        return EtaValidation(weight=k, orders=orders)

    def q_expansion(self, prec: int) -> QSeries:
        return _eta_expansion(self.exponents, prec)

    def __str__(self) -> str:
        return " ".join(f"eta({d}z)^{r}" if d > 1 else f"eta(z)^{r}" for d, r in self.exponents) or "1"


def validate_eta(e: EtaQuotient) -> EtaValidation:
    return e.validate()


def cusp_order(e: EtaQuotient, c: int) -> Fraction:
    return e.cusp_order(c)


@lru_cache(maxsize=4096)
def _eta_expansion(exponents: tuple[tuple[int, int], ...], prec: int) -> QSeries:
    shift = Fraction(sum(d * r for d, r in exponents), 24)
    if shift.denominator != 1 or shift < 0:
        raise FormError(f"eta quotient has q-order {shift} at infinity")
    s = int(shift)
    if s >= prec:
        return QSeries.zero(prec)
    inner = prec - s
    series = QSeries.one(inner)
    for d, r in exponents:
        series = series * euler_power(d, r, inner)
    return series.shift(s, prec)


@dataclass(frozen=True)
class EisensteinFactor:
    """E_k(d z)^power."""

    k: int
    d: int = 1
    power: int = 1

    @property
    def weight(self) -> int:
        return self.k * self.power

    def q_expansion(self, prec: int) -> QSeries:
        return _eisenstein_factor(self.k, self.d, self.power, prec)

    def __str__(self) -> str:
        inner = f"E{self.k}({self.d}z)" if self.d > 1 else f"E{self.k}"
        return inner if self.power == 1 else f"{inner}^{self.power}"


@lru_cache(maxsize=1024)
def _eisenstein_factor(k: int, d: int, power: int, prec: int) -> QSeries:
    base = v_operator(eisenstein(k, -(-prec // d)), d, prec)
    return base ** power


@dataclass(frozen=True)
class Atom:
    """coeff * eta-part * prod of Eisenstein factors."""

    coeff: Fraction
    eta: EtaQuotient | None = None
    eisenstein: tuple[EisensteinFactor, ...] = ()

    @property
    def weight(self) -> int:
        w = self.eta.weight if self.eta is not None else 0
        return w + sum(e.weight for e in self.eisenstein)

    @property
    def key(self) -> tuple:
        return (self.eta.exponents if self.eta is not None else (), self.eisenstein)

    def q_expansion(self, prec: int) -> QSeries:
        return _atom_expansion(self.key, prec).scale(self.coeff)

    def eta_order_lower_bound(self, c: int) -> Fraction:
        return self.eta.cusp_order(c) if self.eta is not None else Fraction(0)


@lru_cache(maxsize=4096)
def _atom_expansion(key: tuple, prec: int) -> QSeries:
    exponents, eis = key
    series = _eta_expansion(exponents, prec) if exponents else QSeries.one(prec)
    for e in eis:
        series = series * e.q_expansion(prec)
    return series


@dataclass(frozen=True)
class Form:
    """A rational linear combination of atoms, all of weight ``weight`` on Gamma_0(level)."""

    level: int
    weight: int
    atoms: tuple[Atom, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.weight < 1 or self.weight % 2:
            raise FormError(f"weight must be even and positive, got {self.weight}")
        for atom in self.atoms:
            if atom.eta is not None:
                if atom.eta.level != self.level:
                    raise FormError("atom eta quotient level mismatch")
                atom.eta.validate()
            for e in atom.eisenstein:
                if self.level % e.d:
                    raise FormError(f"Eisenstein factor d={e.d} does not divide level {self.level}")
                if e.k < 4 or e.k % 2 or e.power < 0:
                    raise FormError(f"unsupported Eisenstein weight {e.k}")
            if atom.weight != self.weight:
                raise FormError(f"atom of weight {atom.weight} in a form of weight {self.weight}")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_eta(cls, level: int, exponents, name: str = "") -> Form:
        e = EtaQuotient(level, exponents)
        k = e.validate().weight
        return cls(level, k, (Atom(Fraction(1), e),), name)

    @classmethod
    def from_atoms(cls, level: int, atoms: Iterable[tuple], name: str = "") -> Form:
        """Atoms given as ``(coeff, eta_exponents_or_None, [EisensteinFactor, ...])``."""
        built = []
        for coeff, eta, eis in atoms:
            e = EtaQuotient(level, eta) if eta else None
            built.append(Atom(Fraction(coeff), e, tuple(eis)))
        if not built:
            raise FormError("a form needs at least one atom")
        return cls(level, built[0].weight, tuple(built), name)

    @classmethod
    def combine(cls, terms: Iterable[tuple], name: str = "") -> Form:
        """sum c_i F_i; identical atoms are merged and zero atoms dropped."""
        terms = list(terms)
        if not terms:
            raise FormError("empty linear combination")
        level, weight = terms[0][1].level, terms[0][1].weight
        acc: dict[tuple, Atom] = {}
        for c, f in terms:
            if f.level != level or f.weight != weight:
                raise FormError("linear combination of forms with different level or weight")
            c = Fraction(c)
            for a in f.atoms:
                prev = acc.get(a.key)
                coeff = a.coeff * c + (prev.coeff if prev else 0)
                acc[a.key] = Atom(coeff, a.eta, a.eisenstein)
        atoms = tuple(a for a in acc.values() if a.coeff)
        return cls(level, weight, atoms, name)

    # -- properties ---------------------------------------------------

    @property
    def eta_only(self) -> bool:
        return len(self.atoms) == 1 and self.atoms[0].coeff == 1 and self.atoms[0].eta is not None and not self.atoms[0].eisenstein

    @property
    def eta(self) -> EtaQuotient | None:
        return self.atoms[0].eta if self.eta_only else None

    @property
    def cusp_orders_available(self) -> bool:
        return all(self.exact_cusp_order(c) is not None for c in arith.divisors(self.level))

    def q_expansion(self, prec: int) -> QSeries:
        cached = self._cache.get("series")
        if cached is not None and cached.prec >= prec:
            return cached.truncate(prec)
        series = QSeries.zero(prec)
        for atom in self.atoms:
            series = series + atom.q_expansion(prec)
        self._cache["series"] = series
        return series

    def infinity_order(self) -> int:
        """Exact order at infinity; the Sturm bound caps it for nonzero forms."""
        b = arith.sturm_bound(self.weight, self.level)
        o = self.q_expansion(b + 1).order()
        if o is None:
            raise FormError(f"form {self.name or '?'} is identically zero")
        return o

    def exact_cusp_order(self, c: int) -> Fraction | None:
        """Certified order at cusp class ``c``, or None when it cannot be certified.

        Besides single eta quotients and the cusp at infinity, a combination is
        certified when exactly one atom attains the minimal order bound and that
        atom is a pure eta quotient: its leading term cannot cancel.
        """
        if self.eta_only:
            return self.eta.cusp_order(c)
        if c == self.level or self.level == 1:
            return Fraction(self.infinity_order())
        if not self.atoms:
            return None
        bounds = [a.eta_order_lower_bound(c) for a in self.atoms]
        low = min(bounds)
        hits = [a for a, b in zip(self.atoms, bounds) if b == low]
        if len(hits) == 1 and hits[0].eta is not None and not hits[0].eisenstein:
            return low
        return None

    def cusp_order(self, c: int) -> Fraction:
        o = self.exact_cusp_order(c)
        if o is None:
            raise FormError(f"cusp orders unavailable for {self.name or 'form'} at c={c}")
        return o

    def cusp_order_lower_bound(self, c: int) -> Fraction:
        """A certified lower bound for the order at cusp class ``c``; exact where available."""
        o = self.exact_cusp_order(c)
        if o is not None:
            return o
        return min(a.eta_order_lower_bound(c) for a in self.atoms)

    def __str__(self) -> str:
        parts = []
        for a in self.atoms:
            factors = ([str(a.eta)] if a.eta is not None else []) + [str(e) for e in a.eisenstein]
            body = " ".join(factors) or "1"
            parts.append(body if a.coeff == 1 else f"({a.coeff}) {body}")
        return " + ".join(parts) if parts else "0"


def q_expansion(form: Form, prec: int) -> QSeries:
    return form.q_expansion(prec)


def independent(forms: Sequence[Form], level: int, weight: int) -> bool:
    """Exact linear independence, decided on coefficients 0..sturm_bound(weight, level)."""
    for f in forms:
        if f.level != level or f.weight != weight:
            raise FormError("independence check needs forms of one level and weight")
    rows = arith.sturm_bound(weight, level) + 1
    mat = [list(f.q_expansion(rows).coeffs) for f in forms]
    return rank(mat) == len(forms)
