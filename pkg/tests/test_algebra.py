import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcoalg import FormExpr, SuperDomain, bidegree, delta, delta_series, dtheta, dx, normalize, theta, wedge
from pcoalg.algebra import coord, word
from pcoalg.random_forms import random_form

R32 = SuperDomain(3, 2)


def test_dtheta_kills_delta():
    dom = SuperDomain(0, 1)
    assert wedge(dtheta(dom, 0), delta(dom, 0)).iszero


def test_delta_squares_to_zero(r12):
    assert wedge(delta(r12, 0), delta(r12, 0)).iszero
    assert wedge(delta(r12, 0, 2), delta(r12, 0, 1)).iszero


def test_wedge_sign_by_transpositions():
    dom = SuperDomain(2, 2)
    a = wedge(theta(dom, 0), dx(dom, 0))
    b = wedge(theta(dom, 1), dx(dom, 1))
    expected = word(dom, -1, [("th", 0), ("th", 1), ("dx", 0), ("dx", 1)])
    assert wedge(a, b) == expected


def _brute_sign(seq):
    """Sort odd letters by bubble sort and count swaps."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


@pytest.mark.parametrize("seed", range(20))
def test_word_matches_brute_force_sign(seed):
    rng = random.Random(seed)
    letters = [("th", 0), ("th", 1), ("dx", 0), ("dx", 1), ("dx", 2)]
    order = {g: i for i, g in enumerate(letters)}
    picked = rng.sample(letters, rng.randint(1, 5))
    got = word(R32, 1, picked)
    canonical = sorted(picked, key=order.get)
    assert got == word(R32, _brute_sign([order[g] for g in picked]), canonical)


def test_normalize_rules(r12):
    assert wedge(dtheta(r12, 0), delta(r12, 0, 1)) == -delta(r12, 0)
    assert wedge(dtheta(r12, 0) ** 2, delta(r12, 0, 1)).iszero
    assert wedge(dtheta(r12, 0) ** 2, delta(r12, 0, 3)) == delta(r12, 0, 1).scale(6)
    assert word(r12, 1, [("th", 0), ("th", 0), ("dx", 0)]).iszero


def test_bidegree_examples(r12):
    assert bidegree(word(r12, 1, [("th", 0), ("th", 1), ("delta", 0, 0), ("delta", 1, 0)])) == (0, 2)
    dom = SuperDomain(2, 1)
    assert bidegree(word(dom, 1, [("dx", 0), ("dx", 1), ("delta", 0, 0)])) == (2, 1)
    assert bidegree(word(R32, 1, [("dx", 0), ("dx", 1), ("th", 0), ("delta", 0, 2), ("delta", 1, 1)])) == (-1, 2)


def test_bidegree_rejects_mixed(r12):
    with pytest.raises(ValueError, match="bidegree"):
        bidegree(dx(r12, 0) + delta(r12, 0))


def test_delta_series_truncated_example():
    dom = SuperDomain(0, 2)
    got = delta_series(dtheta(dom, 0) + dtheta(dom, 1), 0, 2)
    expected = (delta(dom, 0) + wedge(dtheta(dom, 1), delta(dom, 0, 1))
                + wedge(dtheta(dom, 1) ** 2, delta(dom, 0, 2)).scale(Fraction(1, 2)))
    assert got.truncated
    assert got.exact() == expected


def test_delta_series_zero_shift(r12):
    got = delta_series(dtheta(r12, 0), 0, 5)
    assert got == delta(r12, 0) and not got.truncated


def test_delta_series_nilpotent_terminates(r12):
    shift = wedge(theta(r12, 0), dx(r12, 0))
    got = delta_series(dtheta(r12, 0) + shift, 0, 0)
    assert not got.truncated
    assert got == delta(r12, 0) + wedge(shift, delta(r12, 0, 1))


@pytest.mark.parametrize("order", [1, 2, 3, 6])
def test_series_annihilated_by_second_delta(order):
    dom = SuperDomain(0, 2)
    got = wedge(delta_series(dtheta(dom, 0) + dtheta(dom, 1), 0, order), delta(dom, 1))
    assert got == wedge(delta(dom, 0), delta(dom, 1))
    assert not got.truncated


def test_delta_series_rejects_odd_argument(r12):
    with pytest.raises(ValueError):
        delta_series(dtheta(r12, 0) + dx(r12, 0), 0, 2)


def test_same_index_deltas_vanish(r12):
    assert word(r12, 1, [("delta", 0, 1), ("delta", 0, 0)]).iszero


def test_mismatched_domains(r12, r02):
    with pytest.raises(ValueError):
        wedge(theta(r12, 0), theta(r02, 0))


def test_rational_arithmetic_is_exact(r12):
    a = coord(r12, 0).scale(Fraction(1, 3)) * dx(r12, 0)
    assert (a + a + a) == wedge(coord(r12, 0), dx(r12, 0))


# property checks ------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=10**6)


def _homogeneous(rng):
    a = random_form(rng, R32, terms=2)
    return a.parity_part(rng.randint(0, 1))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_normalize_idempotent(seed):
    a = random_form(random.Random(seed), R32)
    assert normalize(normalize(a)) == normalize(a)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_graded_commutativity(seed):
    rng = random.Random(seed)
    a, b = _homogeneous(rng), _homogeneous(rng)
    pa = (a.parities() or {0}).pop()
    pb = (b.parities() or {0}).pop()
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (pa * pb))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (random_form(rng, R32, terms=2) for _ in range(3))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_bidegree_additive(seed):
    rng = random.Random(seed)
    a, b = random_form(rng, R32, terms=1), random_form(rng, R32, terms=1)
    ab = wedge(a, b)
    if a.iszero or b.iszero or ab.iszero:
        return
    da, pa = bidegree(a)
    db, pb = bidegree(b)
    assert bidegree(ab) == (da + db, pa + pb)
