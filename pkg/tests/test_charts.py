import random
from fractions import Fraction

import pytest

from pcoalg import ChartMap, SuperDomain, berezinian_reduced, compose, delta, delta_transform, dtheta, dx, pullback
from pcoalg.algebra import coord, theta, wedge, word
from pcoalg.charts import determinant
from pcoalg.complexes import from_sigma, pco_st, to_sigma
from pcoalg.properties import check_functoriality, check_globality, check_naturality
from pcoalg.random_forms import random_chart, random_form


def scaling(dom, lam):
    return ChartMap(dom, tuple(coord(dom, i) for i in range(dom.m)),
                    tuple(theta(dom, a).scale(lam) for a in range(dom.n)))


@pytest.mark.parametrize("lam", [Fraction(3), Fraction(-1, 2), Fraction(7, 5)])
def test_pco_invariant_under_scaling(r12, lam):
    assert pullback(scaling(r12, lam), pco_st(r12)) == pco_st(r12)


def test_single_delta_scales_inversely():
    dom = SuperDomain(0, 1)
    assert pullback(scaling(dom, 3), delta(dom, 0)) == delta(dom, 0).scale(Fraction(1, 3))


def test_derivative_delta_scaling_rule():
    dom = SuperDomain(0, 1)
    for k in range(4):
        got = delta_transform([dtheta(dom, 0).scale(2)], [k])
        assert got == delta(dom, 0, k).scale(Fraction(1, 2 ** (k + 1)))


def test_identity_pullback(r32):
    rng = random.Random(2)
    ident = ChartMap.identity(r32)
    for _ in range(20):
        a = random_form(rng, r32)
        assert pullback(ident, a) == a


def test_delta_transform_constant_matrix(r12):
    args = [dtheta(r12, 0).scale(2) + dtheta(r12, 1), dtheta(r12, 0) + dtheta(r12, 1).scale(3)]
    got = delta_transform(args, [0, 0])
    assert got == wedge(delta(r12, 0), delta(r12, 1)).scale(Fraction(1, 5))


def test_delta_transform_trivial(r12):
    assert delta_transform([dtheta(r12, 0)], [0]) == delta(r12, 0)


def test_delta_transform_nilpotent_shift(r12):
    shift = wedge(theta(r12, 0), dx(r12, 0))
    got = delta_transform([dtheta(r12, 0) + shift], [0])
    assert got == delta(r12, 0) + wedge(shift, delta(r12, 0, 1))
    assert not got.truncated


def test_delta_transform_singular(r12):
    with pytest.raises(ValueError):
        delta_transform([dtheta(r12, 0) + dtheta(r12, 1), dtheta(r12, 0) + dtheta(r12, 1)], [0, 0])


def test_berezinian_examples(r12):
    dom = SuperDomain(1, 1)
    m = ChartMap(dom, (coord(dom, 0).scale(2),), (theta(dom, 0),))
    assert berezinian_reduced(m) == 2
    assert berezinian_reduced(ChartMap.identity(dom)) == 1
    assert berezinian_reduced(scaling(r12, Fraction(5))) == Fraction(1, 25)


def test_chart_rejects_wrong_parity(r12):
    with pytest.raises(ValueError):
        ChartMap(r12, (theta(r12, 0),), (theta(r12, 0), theta(r12, 1)))


def test_chart_rejects_singular_chi(r12):
    with pytest.raises(ValueError):
        ChartMap(r12, (coord(r12, 0),), (theta(r12, 0), theta(r12, 0)))


def test_determinant():
    rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert determinant(rows, 0, 1) == 18


def test_x_dependent_chi_gives_rational_coefficients(r12):
    x = coord(r12, 0)
    m = ChartMap(r12, (x,), (theta(r12, 0).scale(r12.x(0) + 1), theta(r12, 1)))
    got = pullback(m, wedge(delta(r12, 0), delta(r12, 1)))
    assert got == wedge(delta(r12, 0), delta(r12, 1)).scale(1 / r12.field(r12.x(0) + 1)) + \
        word(r12, -1 / r12.field((r12.x(0) + 1) ** 2), [("th", 0), ("dx", 0), ("delta", 0, 1), ("delta", 1, 0)])
    assert pullback(m, pco_st(r12)) == pco_st(r12)


def test_globality(r32):
    form, sigma = check_globality(r32, 0, samples=8)
    assert form.ok and sigma.ok, (form.summary(), sigma.summary())


def test_globality_of_section_matches_pco(r32):
    section = to_sigma(pco_st(r32))
    assert from_sigma(section) == pco_st(r32)


def test_naturality(r32):
    rep = check_naturality(r32, 1, samples=20)
    assert rep.ok, rep.summary()


def test_functoriality(r32):
    rep = check_functoriality(r32, 2, samples=10)
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("seed", [0, 1])
def test_pullback_identities_with_rational_coefficients(r32, seed):
    nat = check_naturality(r32, seed, samples=3, x_dependent=True, max_order=1)
    fun = check_functoriality(r32, seed, samples=2, x_dependent=True, max_order=1)
    assert nat.ok and fun.ok, (nat.summary(), fun.summary())


def test_compose_matches_substitution(r12):
    rng = random.Random(9)
    m1, m2 = random_chart(rng, r12), random_chart(rng, r12)
    c = compose(m2, m1)
    x = coord(r12, 0)
    assert pullback(c, x) == pullback(m1, pullback(m2, x))
