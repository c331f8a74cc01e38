"""deg C(f,g,h), the map degree d(f,g,h) and the eta invariant, by two routes.

Route one is the degree identity d * deg C = eta_m, with eta_m read off cusp
orders (exact when all three forms are eta quotients).  Route two divides the
pole degree of g/f by the Z-degree of P.  The report cross-checks both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .forms import Form
from .relation import HomogPoly3, KernelResult, find_min_relation


class DegreeError(RuntimeError):
    pass


def area_term(weight: int, level: int) -> Fraction:
    """m/(4 pi) * hyperbolic area of Gamma_0(N) \\ H, i.e. m * mu(N) / 12."""
    return Fraction(weight * arith.index_mu(level), 12)


def cusp_min_sum(f: Form, g: Form, h: Form, *, lower_bound: bool = False) -> Fraction:
    n = f.level
    total = Fraction(0)
    for cls in arith.cusp_classes(n):
        if lower_bound:
            orders = [x.cusp_order_lower_bound(cls.c) for x in (f, g, h)]
        else:
            orders = [x.cusp_order(cls.c) for x in (f, g, h)]
        total += cls.count * min(orders)
    return total


def eta_invariant(f: Form, g: Form, h: Form, weight: int | None = None, level: int | None = None) -> int:
    """area term minus total common vanishing; needs three eta quotients."""
    if not (f.eta_only and g.eta_only and h.eta_only):
        raise DegreeError("non-eta form in exact mode")
    weight = f.weight if weight is None else weight
    level = f.level if level is None else level
    value = area_term(weight, level) - cusp_min_sum(f, g, h)
    if value.denominator != 1 or value < 1:
        raise DegreeError(f"eta invariant {value} is not a positive integer")
    return int(value)


def pole_degree(f: Form, g: Form) -> int:
    """Degree of the pole divisor of g/f, i.e. [C(X_0(N)) : C(g/f)].

    f must be an eta quotient: it has no zeros on H, so all poles sit at cusps.
    """
    if not f.eta_only:
        raise DegreeError("f not an eta quotient")
    if not g.cusp_orders_available:
        raise DegreeError("cusp orders unavailable for g")
    total = Fraction(0)
    for cls in arith.cusp_classes(f.level):
        diff = f.cusp_order(cls.c) - g.cusp_order(cls.c)
        if diff > 0:
            total += cls.count * diff
    if total.denominator != 1 or total < 1:
        raise DegreeError(f"pole degree {total} is not a positive integer")
    return int(total)


def deg_y(poly: HomogPoly3) -> int:
    """Degree in y of Q(x, y) = P(1, x, y): the largest Z-exponent present."""
    return max(a[2] for a, _ in poly.terms)


def map_degree(poly: HomogPoly3, f: Form, g: Form, pole: int | None = None) -> int:
    pole = pole_degree(f, g) if pole is None else pole
    dy = deg_y(poly)
    if dy < 1 or pole % dy:
        raise DegreeError("divisibility violated")
    return pole // dy


@dataclass
class DegreeReport:
    deg_C: int
    d: int
    eta: int | None
    pole_degree: int
    deg_y_Q: int
    area_term: Fraction
    cusp_min_sum: Fraction
    mode: str
    checks: dict[str, bool] = field(default_factory=dict)
    polynomial: HomogPoly3 | None = None
    kernel: KernelResult | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else str(x)

        return {
            "deg_C": s(self.deg_C),
            "d": s(self.d),
            "eta": s(self.eta),
            "pole_degree": s(self.pole_degree),
            "deg_y_Q": s(self.deg_y_Q),
            "area_term": s(self.area_term),
            "cusp_min_sum": s(self.cusp_min_sum),
            "mode": self.mode,
            "checks": dict(self.checks),
        }


def degree_report(f: Form, g: Form, h: Form, level: int | None = None, weight: int | None = None,
                  *, slack: int = 0, pole: int | None = None,
                  check_independence: bool = True) -> DegreeReport:
    level = f.level if level is None else level
    weight = f.weight if weight is None else weight
    poly, kres = find_min_relation(f, g, h, level, weight, slack=slack,
                                   check_independence=check_independence)
    pole = pole_degree(f, g) if pole is None else pole
    dy = deg_y(poly)
    d = map_degree(poly, f, g, pole)
    area = area_term(weight, level)
    exact = f.eta_only and g.eta_only and h.eta_only
    checks: dict[str, bool] = {"lemma21": d * dy == pole}
    if exact:
        cmin = cusp_min_sum(f, g, h)
        eta = eta_invariant(f, g, h, weight, level)
        checks["thm1"] = d * poly.degree == eta
        checks["bound"] = dy <= poly.degree <= eta <= area
        mode = "exact"
    else:
        eta = None
        all_exact = all(x.cusp_orders_available for x in (f, g, h))
        # f is an eta quotient, so interior points never contribute.
        cmin = cusp_min_sum(f, g, h, lower_bound=not all_exact)
        ceiling = area - cmin
        checks["bound"] = dy <= poly.degree and d * poly.degree <= ceiling
        if all_exact:
            checks["thm1_informational"] = d * poly.degree == ceiling
        mode = "lemma-route-only"
    return DegreeReport(
        deg_C=poly.degree, d=d, eta=eta, pole_degree=pole, deg_y_Q=dy,
        area_term=area, cusp_min_sum=cmin, mode=mode, checks=checks,
        polynomial=poly, kernel=kres,
    )
