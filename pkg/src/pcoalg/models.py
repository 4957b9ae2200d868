"""Fixtures: flat superspace, the d=3 N=1 supersymmetric PCO and fat-point integration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from sympy import QQ

from .algebra import FormExpr, bidegree, delta, dtheta, dx, theta, wedge, word
from .calculus import VectorField, contract, d
from .complexes import pco_st
from .domain import SuperDomain
from .linalg import matrix_from_columns, rational, solve

# gamma^0 = -Id, gamma^1 = sigma_3, gamma^2 = -sigma_1 (real and symmetric)
GAMMA = (
    ((-1, 0), (0, -1)),
    ((1, 0), (0, -1)),
    ((0, -1), (-1, 0)),
)
ETA = (-1, 1, 1)
EPS2 = ((0, 1), (-1, 0))  # eps^{12} = 1


def levi_civita(a: int, b: int, c: int) -> int:
    """``eps_{abc}`` with ``eps_{012} = 1``."""
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def gamma_lower(a: int, al: int, be: int) -> int:
    """``gamma_{a alpha beta} = eta_{ab} gamma^b_{alpha beta}``."""
    return ETA[a] * GAMMA[a][al][be]


def gamma_up_default(c: int, al: int, be: int) -> int:
    """``gamma^{c alpha beta}`` used in Y_susy: the entries of ``gamma^c``.

    With this placement Y_susy - Y_st is d-exact.  It coincides with raising
    both spinor indices with eps and lowering ``c`` with eta, up to an overall
    sign.
    """
    return GAMMA[c][al][be]


def gamma_up_eps(c: int, al: int, be: int) -> int:
    """``eps^{al ga} eps^{be de} gamma^c_{ga de}``: the literal epsilon raising."""
    return sum(EPS2[al][g] * EPS2[be][h] * GAMMA[c][g][h] for g in range(2) for h in range(2))


@dataclass(frozen=True, eq=False)
class D3N1Model:
    domain: SuperDomain
    gamma: tuple
    V: tuple
    psi: tuple
    P: tuple
    D: tuple
    Q: tuple


def _field(dom, x_part, th_part, parity):
    comps = {}
    for a, f in x_part.items():
        comps[("x", a)] = f
    for al, f in th_part.items():
        comps[("th", al)] = f
    return VectorField(dom, comps, parity)


def d3n1_model() -> D3N1Model:
    dom = SuperDomain(3, 2, ("x0", "x1", "x2"), ("th1", "th2"))
    th = [theta(dom, al) for al in range(2)]
    V = []
    for a in range(3):
        v = dx(dom, a)
        for al, be in product(range(2), repeat=2):
            if GAMMA[a][al][be]:
                v = v + wedge(th[al], dtheta(dom, be)).scale(GAMMA[a][al][be])
        V.append(v)
    psi = tuple(dtheta(dom, al) for al in range(2))
    P = tuple(VectorField.partial_x(dom, a) for a in range(3))

    def spinor_field(al, sign):
        x_part = {}
        for a in range(3):
            f = FormExpr(dom)
            for be in range(2):
                if GAMMA[a][al][be]:
                    f = f + th[be].scale(sign * GAMMA[a][al][be])
            x_part[a] = f
        return _field(dom, x_part, {al: FormExpr.scalar(dom, 1)}, 1)

    D = tuple(spinor_field(al, -1) for al in range(2))
    Q = tuple(spinor_field(al, 1) for al in range(2))
    return D3N1Model(dom, GAMMA, tuple(V), psi, P, D, Q)


def gamma_P(model: D3N1Model, al: int, be: int, scale: int) -> VectorField:
    """``scale * gamma^a_{al be} P_a``."""
    out = VectorField(model.domain, {}, 0)
    for a in range(3):
        if GAMMA[a][al][be]:
            out = out + VectorField(model.domain, {("x", a): FormExpr.scalar(model.domain, scale * GAMMA[a][al][be])}, 0)
    return out


def _iota_deltas(dom, al, be):
    base = wedge(delta(dom, 0), delta(dom, 1))
    for idx in (be, al):
        base = contract(VectorField.partial_th(dom, idx), base)
    return base


def pco_susy(model: D3N1Model, gamma_up=gamma_up_default) -> FormExpr:
    """``-1/8 V^a V^b gamma^{c al be} eps_abc iota_al iota_be delta(psi^1) delta(psi^2)``."""
    dom = model.domain
    out = FormExpr(dom)
    for a, b, c in product(range(3), repeat=3):
        e = levi_civita(a, b, c)
        if not e:
            continue
        vv = wedge(model.V[a], model.V[b])
        for al, be in product(range(2), repeat=2):
            g = gamma_up(c, al, be)
            if g:
                out = out + wedge(vv, _iota_deltas(dom, al, be)).scale(Fraction(-e * g, 8))
    return out


# --------------------------------------------------------------------------
# the homotopy Lambda

def lambda_basis(dom: SuperDomain):
    """Constant-coefficient monomials of bidegree (-1|n) (no dth powers)."""
    n = dom.n
    out = []
    for t in range(n + 1):
        for T in combinations(range(n), t):
            for s in range(dom.m + 1):
                for S in combinations(range(dom.m), s):
                    total = s + 1
                    for ks in product(range(total + 1), repeat=n):
                        if sum(ks) == total:
                            out.append((T, S, (), tuple((a, ks[a]) for a in range(n))))
    return out


def _coords(expr: FormExpr):
    return {m: rational(c) for m, c in expr.terms.items()}


def solve_exact_primitive(target: FormExpr):
    """A constant-coefficient (-1|n) form ``L`` with ``dL = target``, or ``None``."""
    dom = target.domain
    basis = lambda_basis(dom)
    images = [_coords(d(FormExpr.monomial(dom, mono))) for mono in basis]
    rows = {}
    for img in images + [_coords(target)]:
        for key in img:
            rows.setdefault(key, len(rows))
    M = matrix_from_columns(images, rows)
    b = [QQ(0)] * len(rows)
    for key, v in _coords(target).items():
        b[rows[key]] = v
    sol = solve(M, b)
    if sol is None:
        return None
    out = {}
    for mono, v in zip(basis, sol):
        if v:
            out[mono] = dom.coeff(Fraction(int(v.numerator), int(v.denominator)))
    return FormExpr(dom, out)


def lambda_susy(model: D3N1Model) -> FormExpr:
    """Recomputed ``Lambda`` with ``d Lambda = Y_susy - Y_st``."""
    target = pco_susy(model) - pco_st(model.domain)
    lam = solve_exact_primitive(target)
    if lam is None:
        raise ArithmeticError("Y_susy - Y_st is not exact in the constant-coefficient sector")
    return lam


# the printed homotopy, transcribed as words (coefficient, generators in print order)
PRINTED_LAMBDA = (
    (Fraction(1, 2), [("dx", 0), ("th", 0), ("th", 1), ("delta", 0, 0), ("delta", 1, 2)]),
    (Fraction(1, 2), [("dx", 0), ("th", 0), ("th", 1), ("delta", 0, 2), ("delta", 1, 0)]),
    (Fraction(-1, 4), [("dx", 0), ("dx", 1), ("th", 0), ("delta", 0, 2), ("delta", 1, 1)]),
    (Fraction(-1, 4), [("dx", 1), ("dx", 2), ("th", 1), ("delta", 0, 2), ("delta", 1, 1)]),
    (Fraction(-1, 4), [("dx", 1), ("dx", 2), ("th", 0), ("delta", 0, 1), ("delta", 1, 2)]),
    (Fraction(1, 4), [("dx", 2), ("dx", 0), ("th", 1), ("delta", 0, 2), ("delta", 1, 1)]),
    (Fraction(-1, 4), [("dx", 2), ("dx", 0), ("th", 0), ("delta", 0, 1), ("delta", 1, 2)]),
)


def printed_lambda(model: D3N1Model) -> FormExpr:
    dom = model.domain
    out = FormExpr(dom)
    for c, gens in PRINTED_LAMBDA:
        out = out + word(dom, c, gens)
    return out


@dataclass
class LambdaComparison:
    derived: FormExpr
    printed: FormExpr
    printed_residual: FormExpr  # d(printed) - (Y_susy - Y_st)
    difference: FormExpr        # derived - printed
    difference_closed: bool

    @property
    def printed_is_valid(self) -> bool:
        return self.printed_residual.iszero


def compare_printed_lambda(model: D3N1Model) -> LambdaComparison:
    derived = lambda_susy(model)
    printed = printed_lambda(model)
    target = pco_susy(model) - pco_st(model.domain)
    residual = d(printed) - target
    diff = derived - printed
    return LambdaComparison(derived, printed, residual, diff, d(diff).iszero)


# --------------------------------------------------------------------------
# fat point

def fat_point_integral(a: FormExpr):
    """Coefficient of ``th^1...th^n delta(dth^1)...delta(dth^n)`` on R^(0|n)."""
    dom = a.domain
    if dom.m:
        raise ValueError("fat-point integration needs a domain with m = 0")
    if a.truncated:
        raise ValueError("cannot integrate a truncated expression")
    for mono in a.terms:
        if len(mono[3]) != dom.n:
            raise ValueError(f"integrand must have picture {dom.n}")
    top = (tuple(range(dom.n)), (), (), tuple((al, 0) for al in range(dom.n)))
    return a.coefficient(top)


def check_bidegree(a: FormExpr, expected) -> bool:
    return bidegree(a) == tuple(expected)
