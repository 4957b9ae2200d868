from fractions import Fraction
from itertools import combinations, product

import pytest

from pcoalg import SuperDomain, bidegree, d, lie_derivative, wedge
from pcoalg.algebra import FormExpr, word
from pcoalg.complexes import pco_st
from pcoalg.models import (
    GAMMA,
    check_bidegree,
    compare_printed_lambda,
    fat_point_integral,
    gamma_up_eps,
    lambda_susy,
    pco_susy,
    printed_lambda,
    solve_exact_primitive,
)


def test_gamma_fixture():
    assert GAMMA[0] == ((-1, 0), (0, -1))
    assert GAMMA[1] == ((1, 0), (0, -1))
    assert GAMMA[2] == ((0, -1), (-1, 0))
    for g in GAMMA:
        assert g[0][1] == g[1][0]


def test_maurer_cartan_equations(model):
    for a in range(3):
        rhs = FormExpr(model.domain)
        for al, be in product(range(2), repeat=2):
            rhs = rhs + wedge(model.psi[al], model.psi[be]).scale(GAMMA[a][al][be])
        assert d(model.V[a]) == rhs
    for p in model.psi:
        assert d(p).iszero


def test_pco_susy_properties(model):
    y = pco_susy(model)
    assert bidegree(y) == (0, 2)
    assert d(y).iszero
    for Q in model.Q:
        assert lie_derivative(Q, y).iszero


def test_pco_susy_differs_from_st_by_exact_form(model):
    lam = lambda_susy(model)
    assert check_bidegree(lam, (-1, 2))
    assert (d(lam) + pco_st(model.domain) - pco_susy(model)).iszero


def test_printed_lambda_comparison(model):
    cmp = compare_printed_lambda(model)
    assert bidegree(cmp.printed) == (-1, 2)
    assert len(cmp.printed.terms) == 7
    # with these conventions the printed homotopy is itself a valid primitive
    assert cmp.printed_is_valid
    assert cmp.difference_closed


def test_eps_raised_placement_is_not_exact(model):
    y = pco_susy(model, gamma_up_eps)
    assert d(y).iszero
    assert solve_exact_primitive(y - pco_st(model.domain)) is None


def test_printed_lambda_words(model):
    lam = printed_lambda(model)
    dom = model.domain
    first = word(dom, Fraction(1, 2), [("dx", 0), ("th", 0), ("th", 1), ("delta", 0, 0), ("delta", 1, 2)])
    assert first.terms.items() <= lam.terms.items()


# fat point --------------------------------------------------------------------

def test_fat_point_normalisation(r02):
    assert fat_point_integral(pco_st(r02)) == 1


def test_fat_point_missing_theta(r02):
    assert fat_point_integral(word(r02, 1, [("th", 0), ("delta", 0, 0), ("delta", 1, 0)])) == 0


def _bidegree_minus_one_monomials(dom):
    """All theta-words times deltas with total derivative order 1."""
    for t in range(dom.n + 1):
        for T in combinations(range(dom.n), t):
            for k1 in range(2):
                gens = [("th", a) for a in T] + [("delta", 0, k1), ("delta", 1, 1 - k1)]
                yield word(dom, 1, gens)


def test_fat_point_stokes(r02):
    count = 0
    for beta in _bidegree_minus_one_monomials(r02):
        assert bidegree(beta) == (-1, 2)
        assert fat_point_integral(d(beta)) == 0
        count += 1
    assert count == 8


def test_fat_point_errors(r12, r02):
    with pytest.raises(ValueError):
        fat_point_integral(pco_st(r12))
    with pytest.raises(ValueError):
        fat_point_integral(word(r02, 1, [("th", 0)]))


def test_fat_point_witnesses_nonexactness():
    """Y_st is closed with nonzero integral, so it is not d of a (-1|2) form."""
    dom = SuperDomain(0, 2)
    y = pco_st(dom)
    assert d(y).iszero and fat_point_integral(y) != 0
    assert solve_exact_primitive(y) is None
