from fractions import Fraction

import pytest

from x0models.catalog import gamma0_2_family, gamma0_2_veronese, gamma0_2_weight12, level1_weight24
from x0models.degrees import (
    DegreeError,
    area_term,
    deg_y,
    degree_report,
    eta_invariant,
    map_degree,
    pole_degree,
)
from x0models.forms import Form
from x0models.relation import HomogPoly3


@pytest.mark.parametrize("m, n, expected", [(24, 1, 2), (12, 2, 3), (24, 2, 6)])
def test_area_term(m, n, expected):
    assert area_term(m, n) == expected


def test_eta_invariant_examples():
    assert eta_invariant(*gamma0_2_weight12()) == 2
    assert eta_invariant(*gamma0_2_veronese()) == 4


def test_eta_invariant_ignores_common_factor():
    # multiplying by Delta raises the area term by mu and every cusp minimum uniformly
    triple = gamma0_2_weight12()
    lifted = [Form.from_eta(2, {**dict(x.eta.exponents), 1: x.eta.r(1) + 24}) for x in triple]
    assert eta_invariant(*lifted, 24, 2) == eta_invariant(*triple)


def test_eta_invariant_needs_eta_quotients():
    with pytest.raises(DegreeError, match="non-eta form in exact mode"):
        eta_invariant(*level1_weight24())


def test_pole_degree_examples():
    d, d2, _ = gamma0_2_weight12()
    assert pole_degree(d, d2) == 1
    f, g, _ = gamma0_2_veronese()
    assert pole_degree(f, g) == 2
    f, g, _ = level1_weight24()
    assert pole_degree(f, g) == 2


def test_pole_degree_preconditions():
    f, g, h = level1_weight24()
    with pytest.raises(DegreeError, match="f not an eta quotient"):
        pole_degree(g, f)


def test_deg_y():
    assert deg_y(HomogPoly3.from_terms(2, [((2, 0, 0), 1), ((0, 1, 1), -1)])) == 1
    assert deg_y(HomogPoly3.from_terms(2, [((0, 2, 0), 1), ((1, 0, 1), -1)])) == 1
    p = HomogPoly3.from_terms(2, [((1, 1, 0), 1), ((0, 0, 2), -1), ((1, 0, 1), -3456), ((2, 0, 0), -2985984)])
    assert deg_y(p) == 2


def test_map_degree_divisibility():
    f, g, _ = gamma0_2_veronese()
    p = HomogPoly3.from_terms(3, [((0, 0, 3), 1), ((3, 0, 0), 1)])
    with pytest.raises(DegreeError, match="divisibility violated"):
        map_degree(p, f, g)


def _summary(rep):
    return (rep.deg_C, rep.d, rep.eta, rep.pole_degree, rep.deg_y_Q, rep.mode)


def test_report_gamma0_2_weight12():
    rep = degree_report(*gamma0_2_weight12())
    assert _summary(rep) == (2, 1, 2, 1, 1, "exact")
    assert rep.checks == {"lemma21": True, "thm1": True, "bound": True}


def test_report_veronese():
    rep = degree_report(*gamma0_2_veronese())
    assert _summary(rep) == (2, 2, 4, 2, 1, "exact")
    assert rep.ok


def test_report_level1():
    rep = degree_report(*level1_weight24())
    assert _summary(rep) == (2, 1, None, 2, 2, "lemma-route-only")
    assert rep.checks["thm1_informational"] and rep.checks["lemma21"]
    assert rep.area_term - rep.cusp_min_sum == 2


def test_report_json_uses_decimal_strings():
    js = degree_report(*gamma0_2_veronese()).to_json()
    assert js["deg_C"] == "2" and js["eta"] == "4" and js["area_term"] == "6"
    assert set(js) == {"deg_C", "d", "eta", "pole_degree", "deg_y_Q", "area_term", "cusp_min_sum", "mode", "checks"}


def test_lemma21_product_independent_of_h():
    basis = {j: gamma0_2_family(j) for j in range(-2, 5)}
    f, g = basis[2], basis[0]
    pole = pole_degree(f, g)
    seen = set()
    for lam in [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1),
                (1, 1, 1, 1, 1), (2, -1, 0, 3, 0), (0, 0, 1, 0, 1), (1, 0, 1, 0, 1), (-3, 2, 0, 0, 5)]:
        h = Form.combine(zip(lam, [basis[j] for j in (-2, -1, 1, 3, 4)]))
        rep = degree_report(f, g, h, pole=pole)
        assert rep.ok
        seen.add(rep.d * rep.deg_y_Q)
    assert seen == {pole}


def test_chain_inequality_on_exact_triples():
    b = {j: gamma0_2_family(j) for j in range(-2, 5)}
    for h in (-2, -1, 1, 3, 4):
        rep = degree_report(b[2], b[0], b[h])
        assert rep.mode == "exact"
        assert rep.deg_y_Q <= rep.deg_C <= rep.eta <= rep.area_term
        assert rep.d * rep.deg_C == rep.eta
