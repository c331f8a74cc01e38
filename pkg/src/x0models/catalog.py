"""Certified eta quotients and the standard forms used in examples."""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import arith
from .forms import EisensteinFactor, EtaQuotient, Form, FormError


def _cheap_filter(level: int, exps: dict[int, int]) -> bool:
    if sum(exps.values()) % 4:
        return False
    if sum(d * r for d, r in exps.items()) % 24:
        return False
    return sum(level // d * r for d, r in exps.items()) % 24 == 0


def eta_quotients(level: int, *, max_support: int = 2, max_exp: int = 24,
                  max_weight: int = 12, limit: int | None = None) -> list[EtaQuotient]:
    """Certified holomorphic eta quotients on Gamma_0(level) with small support.

    Candidates are scanned in a fixed order (support size, then divisors, then
    exponents), so the output is deterministic.
    """
    divs = arith.divisors(level)
    found: list[EtaQuotient] = []
    seen: set = set()
    rng = [r for r in range(-max_exp, max_exp + 1) if r]
    for size in range(1, max_support + 1):
        for support in itertools.combinations(divs, size):
            for rs in itertools.product(rng, repeat=size):
                total = sum(rs)
                if total <= 0 or total > 2 * max_weight:
                    continue
                exps = dict(zip(support, rs))
                if not _cheap_filter(level, exps):
                    continue
                e = EtaQuotient(level, exps)
                try:
                    e.validate()
                except FormError:
                    continue
                if e.exponents in seen:
                    continue
                seen.add(e.exponents)
                found.append(e)
                if limit is not None and len(found) >= limit:
                    return found
    return found


def eta_catalog(levels=range(2, 37), per_level: int = 3) -> list[EtaQuotient]:
    out = []
    for n in levels:
        out.extend(eta_quotients(n, limit=per_level))
    return out


def delta(level: int = 1, d: int = 1, power: int = 1) -> Form:
    """Delta(d z)^power on Gamma_0(level)."""
    return Form.from_eta(level, {d: 24 * power}, name=f"Delta({d}z)^{power}")


def gamma0_2_weight12() -> tuple[Form, Form, Form]:
    """(Delta, Delta(2z), eta^48 eta(2z)^-24) on Gamma_0(2)."""
    return (
        Form.from_eta(2, {1: 24}, name="Delta"),
        Form.from_eta(2, {2: 24}, name="Delta2"),
        Form.from_eta(2, {1: 48, 2: -24}, name="E"),
    )


def gamma0_2_family(j: int) -> Form:
    """B^2 t^j with B = Delta(2z) and t = (eta(z)/eta(2z))^24, for -2 <= j <= 4."""
    return Form.from_eta(2, {1: 24 * j, 2: 48 - 24 * j}, name=f"B2t{j}")


def gamma0_2_veronese() -> tuple[Form, Form, Form]:
    return gamma0_2_family(2), gamma0_2_family(0), gamma0_2_family(-2)


def level1_weight24() -> tuple[Form, Form, Form]:
    """(Delta^2, E4^6, Delta E6^2) on SL_2(Z)."""
    f = Form.from_eta(1, {1: 48}, name="Delta^2")
    g = Form.from_atoms(1, [(1, None, [EisensteinFactor(4, 1, 6)])], name="E4^6")
    h = Form.from_atoms(1, [(Fraction(1), {1: 24}, [EisensteinFactor(6, 1, 2)])], name="Delta*E6^2")
    return f, g, h
