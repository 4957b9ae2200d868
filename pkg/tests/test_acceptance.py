"""Acceptance criteria 1-11, one test each.

Every test records ``(ok, detail)`` in ``RESULTS`` and prints a PASS/FAIL
line.  Run ``python3 tests/test_acceptance.py`` for the lines alone, or
pytest, which also prints them in its terminal summary.
"""

import random
import sys
import time
from itertools import combinations, product

from pcoalg import SuperDomain, bidegree, d, delta, delta_series, dtheta, graded_bracket, lie_derivative, wedge
from pcoalg.algebra import word
from pcoalg.ce import ce_square_is_zero, d3_coset_model, fierz_residuals, is_nontrivial_class, wz_three_form
from pcoalg.cli.corpus import corpus, roundtrip_failures
from pcoalg.cli.printer import format_expr, term_strings
from pcoalg.complexes import pco_st
from pcoalg.models import (
    compare_printed_lambda,
    d3n1_model,
    fat_point_integral,
    gamma_P,
    lambda_susy,
    pco_susy,
)
from pcoalg.properties import (
    check_cochain_f,
    check_d_squared,
    check_delta_squared,
    check_globality,
    check_homotopy,
    check_intertwining,
    check_quasi_inverse,
    random_lambdas,
)

RESULTS = {}
SEED = 20240501


def _record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def _reports(n, reports):
    ok = all(r.ok for r in reports)
    detail = "; ".join(r.summary() for r in reports)
    for r in reports:
        for label, res in r.failures[:2]:
            detail += f" | {r.name} sample {label}: {res}"
    return _record(n, ok, detail)


def test_criterion_01_d_and_delta_square_to_zero():
    dom = SuperDomain(3, 2)
    assert _reports(1, [check_d_squared(dom, SEED, 500), check_delta_squared(dom, SEED, 500)])


def test_criterion_02_f_is_a_cochain_map():
    dom = SuperDomain(3, 2)
    assert _reports(2, [check_cochain_f(dom, SEED, 100, degrees=range(4))])


def test_criterion_03_quasi_inverse():
    assert _reports(3, list(check_quasi_inverse(SuperDomain(3, 2), SEED, 100)))


def test_criterion_04_globality():
    assert _reports(4, list(check_globality(SuperDomain(3, 2), SEED, 20)))


def test_criterion_05_d3n1_suite():
    model = d3n1_model()
    dom = model.domain
    failures = []
    for al, be in product(range(2), repeat=2):
        if graded_bracket(model.D[al], model.D[be]) != gamma_P(model, al, be, -2):
            failures.append(f"[D{al + 1},D{be + 1}]")
        if graded_bracket(model.Q[al], model.Q[be]) != gamma_P(model, al, be, 2):
            failures.append(f"[Q{al + 1},Q{be + 1}]")
        if not graded_bracket(model.Q[al], model.D[be]).is_zero:
            failures.append(f"[Q{al + 1},D{be + 1}]")
    for a, b in product(range(3), repeat=2):
        if not graded_bracket(model.P[a], model.P[b]).is_zero:
            failures.append(f"[P{a},P{b}]")
    for Q in model.Q:
        for form in model.V + model.psi:
            if not lie_derivative(Q, form).iszero:
                failures.append("L_Q on Maurer-Cartan forms")
    y = pco_susy(model)
    if bidegree(y) != (0, 2) or not d(y).iszero:
        failures.append("Y_susy not a closed (0|2) form")
    if any(not lie_derivative(Q, y).iszero for Q in model.Q):
        failures.append("L_Q Y_susy != 0")
    lam = lambda_susy(model)
    residual = y - pco_st(dom) - d(lam)
    if not residual.iszero:
        failures.append(f"Y_susy - Y_st - d(lambda) = {format_expr(residual)}")
    cmp = compare_printed_lambda(model)
    diff_terms = term_strings(cmp.difference)
    printed_note = ("printed Lambda satisfies d(Lambda) = Y_susy - Y_st exactly" if cmp.printed_is_valid
                    else f"printed Lambda residual: {format_expr(cmp.printed_residual)}")
    print("  derived lambda:", format_expr(lam))
    print("  printed Lambda:", format_expr(cmp.printed))
    print(f"  derived - printed ({len(diff_terms)} terms, closed={cmp.difference_closed}):")
    for t in diff_terms:
        print("   ", t)
    detail = (f"brackets, L_Q, closure and d(lambda) residual exact; {printed_note}; "
              f"derived differs from printed by {len(diff_terms)} terms forming a closed form")
    if failures:
        detail = "failed: " + ", ".join(failures)
    ok = not failures and cmp.difference_closed
    assert _record(5, ok, detail)


def test_criterion_06_homotopy():
    model = d3n1_model()
    reports = list(check_homotopy(lambda_susy(model), SEED, 100))
    for k, lam in enumerate(random_lambdas(model.domain, SEED, 10)):
        assert bidegree(lam) == (-1, 2)
        main, _ = check_homotopy(lam, SEED + k + 1, 100)
        main.name = f"random Lambda {k}"
        reports.append(main)
    assert _reports(6, reports)


def test_criterion_07_dictionary():
    assert _reports(7, list(check_intertwining(SuperDomain(3, 2), SEED, 200)))


def _minus_one_monomials(dom, max_order=3):
    """Every generator word of bidegree (-1|2) on R^(0|2), dth powers included."""
    for t in range(3):
        for T in combinations(range(2), t):
            for k1, k2 in product(range(max_order + 1), repeat=2):
                p = k1 + k2 - 1
                if p < 0:
                    continue
                for p1 in range(p + 1):
                    gens = [("th", a) for a in T]
                    gens += [("dth", 0)] * p1 + [("dth", 1)] * (p - p1)
                    gens += [("delta", 0, k1), ("delta", 1, k2)]
                    yield word(dom, 1, gens)


def test_criterion_08_fat_point():
    dom = SuperDomain(0, 2)
    norm = fat_point_integral(pco_st(dom))
    bad = []
    count = 0
    for beta in _minus_one_monomials(dom):
        if beta.iszero:
            continue
        assert bidegree(beta) == (-1, 2)
        count += 1
        if fat_point_integral(d(beta)) != 0:
            bad.append(format_expr(beta))
    ok = norm == 1 and not bad
    assert _record(8, ok, f"integral(Y_st) = {norm}; integral(d beta) = 0 for {count - len(bad)}/{count} "
                          f"monomials beta" + (f"; nonzero for {bad[:3]}" if bad else ""))


def test_criterion_09_pseudoform_series():
    dom = SuperDomain(3, 2)
    target = wedge(delta(dom, 0), delta(dom, 1))
    bad = []
    for P in range(1, 9):
        series = delta_series(dtheta(dom, 0) + dtheta(dom, 1), 0, P)
        assert series.truncated
        prod = wedge(series, delta(dom, 1))
        if prod != target or prod.truncated:
            bad.append(P)
    assert _record(9, not bad, "exact, truncation cleared, for P = 1..8" if not bad else f"fails for P = {bad}")


def test_criterion_10_ce_suite():
    start = time.perf_counter()
    coset = d3_coset_model()
    squares = [ce_square_is_zero(coset, p) for p in range(5)]
    fierz = fierz_residuals()
    omega = wz_three_form(coset)
    nontrivial = is_nontrivial_class(coset, 3, omega)
    elapsed = time.perf_counter() - start
    ok = all(squares) and all(v == 0 for v in fierz.values()) and nontrivial and elapsed < 60
    assert _record(10, ok, f"M_(p+1) M_p = 0 for p = 0..4: {all(squares)}; Fierz residuals zero: "
                           f"{all(v == 0 for v in fierz.values())} ({len(fierz)} components); "
                           f"WZ 3-form nontrivial: {nontrivial}; {elapsed:.2f}s")


def test_criterion_11_parser_roundtrip():
    entries = corpus(200, SEED)
    bad = roundtrip_failures(entries)
    detail = f"{len(entries) - len(bad)}/{len(entries)} expressions round-trip"
    if bad:
        detail += f"; first failure {bad[0]}"
    assert _record(11, len(entries) >= 200 and not bad, detail)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
