from fractions import Fraction
from itertools import product

import pytest

from pcoalg.algebra import FormExpr, wedge
from pcoalg.ce import (
    CEComplex,
    IntegralChains,
    LieSuperalgebraModel,
    boundary_square_is_zero,
    ce_cohomology,
    ce_differential_matrix,
    ce_square_is_zero,
    chain_to_form,
    d3_coset_model,
    d3_coset_text,
    fierz_residuals,
    format_structure_constants,
    integral_chain_space,
    invariant_cocycles,
    is_nontrivial_class,
    mc_differential,
    parse_structure_constants,
    pco_chain,
    wz_three_form,
)
from pcoalg.linalg import is_zero
from pcoalg.models import GAMMA, pco_susy

OSP12 = """
even: H E F
odd: Q1 Q2
[H,E] = 2*E
[H,F] = -2*F
[E,F] = H
[H,Q1] = Q1
[H,Q2] = -Q2
[E,Q2] = -Q1
[F,Q1] = -Q2
[Q1,Q1] = 2*E
[Q2,Q2] = -2*F
[Q1,Q2] = H
"""


@pytest.fixture(scope="module")
def coset():
    return d3_coset_model()


def test_coset_differential(coset):
    images = mc_differential(coset)
    dom = coset.domain
    for a in range(3):
        rhs = FormExpr(dom)
        for al, be in product(range(2), repeat=2):
            rhs = rhs + wedge(coset.generator(3 + al), coset.generator(3 + be)).scale(GAMMA[a][al][be])
        assert images[a] == rhs
    assert images[3].iszero and images[4].iszero


def test_abelian_algebra_has_zero_differential():
    model = LieSuperalgebraModel(("A", "B"), ("S",), {})
    for p in range(4):
        assert is_zero(ce_differential_matrix(model, p))


@pytest.mark.parametrize("p", range(5))
def test_d_squared_matrices(coset, p):
    assert ce_square_is_zero(coset, p)


@pytest.mark.parametrize("p", range(4))
def test_osp_d_squared(p):
    assert ce_square_is_zero(parse_structure_constants(OSP12), p)


def test_cohomology_dimensions(coset):
    dims = [ce_cohomology(coset, p).dimension for p in range(4)]
    assert dims[0] == 1
    assert dims == [1, 2, 2, 1]


def test_osp_cohomology():
    model = parse_structure_constants(OSP12)
    assert model.jacobi_violations() == []
    assert [ce_cohomology(model, p).dimension for p in range(4)] == [1, 0, 0, 1]


def test_wz_three_form_is_nontrivial(coset):
    omega = wz_three_form(coset)
    assert CEComplex(coset).d(omega).iszero
    assert is_nontrivial_class(coset, 3, omega)


def test_representatives_are_nontrivial(coset):
    for p in range(4):
        res = ce_cohomology(coset, p)
        for rep in res.representatives:
            assert is_nontrivial_class(coset, p, rep)


def test_fierz_identity():
    res = fierz_residuals()
    assert len(res) == 16 and all(v == 0 for v in res.values())


def test_invariant_cocycles_contain_wz(coset):
    inv = invariant_cocycles(coset, 3, generators=["P0", "P1", "P2"])
    assert inv
    omega = wz_three_form(coset)
    # omega is translation invariant and closed, so it lies in the span
    from pcoalg.linalg import matrix_from_columns, solve
    from pcoalg.linalg import rational

    rows = {}
    cols = []
    for v in inv + [omega]:
        col = {}
        for k, c in v.terms.items():
            rows.setdefault(k, len(rows))
            col[k] = rational(c)
        cols.append(col)
    M = matrix_from_columns(cols[:-1], rows)
    b = [0] * len(rows)
    for k, c in cols[-1].items():
        b[rows[k]] = c
    from sympy import QQ

    assert solve(M, [QQ(x) for x in b]) is not None


def test_jacobi_failure_is_reported():
    bad = LieSuperalgebraModel(("A", "B", "C"), (), {("A", "B"): {"C": 1}, ("B", "C"): {"A": 1},
                                                    ("A", "C"): {"A": 1}})
    assert bad.jacobi_violations()
    with pytest.raises(ValueError, match="Jacobi"):
        ce_differential_matrix(bad, 1)


def test_graded_antisymmetry_checked():
    with pytest.raises(ValueError):
        LieSuperalgebraModel(("A", "B"), (), {("A", "B"): {"A": 1}, ("B", "A"): {"A": 1}})
    with pytest.raises(ValueError):
        LieSuperalgebraModel(("A",), ("S",), {("A", "S"): {"A": 1}})


def test_structure_constant_round_trip(coset):
    text = format_structure_constants(coset)
    again = parse_structure_constants(text)
    assert again.structure == coset.structure
    assert parse_structure_constants(d3_coset_text()).structure == coset.structure


def test_structure_constant_errors():
    with pytest.raises(ValueError, match="line 2"):
        parse_structure_constants("even: A\n[A,A] = = 2\n")


def test_integral_chain_top_degree(coset):
    top = integral_chain_space(coset, 3)
    assert len(top) == 1 and not top[0].terms.keys() - {((), (), (), ())}


@pytest.mark.parametrize("k", range(1, 5))
def test_boundary_squared(coset, k):
    assert boundary_square_is_zero(coset, k)
    assert boundary_square_is_zero(parse_structure_constants(OSP12), k)


def test_chain_homology(coset):
    chains = IntegralChains(coset)
    assert [chains.homology_dimension(k) for k in range(5)] == [1, 2, 2, 1, 0]


def test_pco_chain_class(coset, model):
    chains = IntegralChains(coset)
    c = pco_chain(coset)
    assert chains.boundary(c).iszero
    assert chains.is_nontrivial_cycle(3, c)
    assert chain_to_form(coset, c, model) == pco_susy(model).scale(-4)


def test_rational_structure_constants():
    model = parse_structure_constants("even: A B\n[A,B] = 1/2*B\n")
    assert model.f(0, 1, 1) == Fraction(1, 2)
    assert model.f(1, 0, 1) == Fraction(-1, 2)
