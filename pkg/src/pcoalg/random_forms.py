"""Seeded random expressions, Sigma forms and chart maps for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .algebra import FormExpr, coord, theta, word
from .charts import ChartMap
from .complexes import SigmaForm
from .domain import SuperDomain


def _rational(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 2, 3, 5])
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def random_coefficient(rng: random.Random, dom: SuperDomain, max_degree: int = 2, terms: int = 2):
    ring = dom.ring
    out = ring.zero
    for _ in range(terms):
        mono = ring.one
        for _ in range(rng.randint(0, max_degree)):
            if dom.m:
                mono = mono * ring.gens[rng.randrange(dom.m)]
        out = out + mono * dom.coeff(_rational(rng))
    return out or ring.one


def _subset(rng, size, k=None):
    k = rng.randint(0, size) if k is None else k
    return tuple(sorted(rng.sample(range(size), k)))


def _powers(rng, n, total, avoid=()):
    allowed = [a for a in range(n) if a not in avoid]
    out = {}
    if total and not allowed:
        return None
    for _ in range(total):
        a = rng.choice(allowed)
        out[a] = out.get(a, 0) + 1
    return out


def _term(dom, coeff, T, S, powers, deltas):
    gens = [("th", a) for a in T] + [("dx", i) for i in S]
    for a, p in sorted(powers.items()):
        gens.extend([("dth", a)] * p)
    gens.extend(("delta", a, k) for a, k in deltas)
    return word(dom, coeff, gens)


def random_superform(rng: random.Random, dom: SuperDomain, degree: int, terms: int = 3) -> FormExpr:
    """Picture-0 form of fixed degree with polynomial coefficients."""
    out = FormExpr(dom)
    lo = 0 if dom.n else degree
    if degree < 0 or lo > dom.m:
        return out
    for _ in range(terms):
        # pure dx terms free of theta are the ones f sees; keep them frequent
        plain = degree <= dom.m and rng.random() < 0.4
        s = degree if plain else rng.randint(lo, min(degree, dom.m))
        S = _subset(rng, dom.m, s)
        powers = _powers(rng, dom.n, degree - s) or {}
        T = () if plain else _subset(rng, dom.n)
        out = out + _term(dom, random_coefficient(rng, dom), T, S, powers, ())
    return out


def random_form(rng: random.Random, dom: SuperDomain, terms: int = 4, max_order: int = 2) -> FormExpr:
    """Arbitrary bidegree mix: superforms, pseudoforms and integral forms."""
    out = FormExpr(dom)
    for _ in range(terms):
        picture = rng.randint(0, dom.n)
        D = _subset(rng, dom.n, picture)
        deltas = [(a, rng.randint(0, max_order)) for a in D]
        powers = _powers(rng, dom.n, rng.randint(0, 2), avoid=D) or {}
        S = _subset(rng, dom.m)
        T = _subset(rng, dom.n)
        out = out + _term(dom, random_coefficient(rng, dom), T, S, powers, deltas)
    return out


def random_integral_form(rng: random.Random, dom: SuperDomain, terms: int = 3, max_order: int = 3) -> FormExpr:
    out = FormExpr(dom)
    for _ in range(terms):
        deltas = [(a, rng.randint(0, max_order)) for a in range(dom.n)]
        out = out + _term(dom, random_coefficient(rng, dom), _subset(rng, dom.n), _subset(rng, dom.m),
                          {}, deltas)
    return out


def random_sigma(rng: random.Random, dom: SuperDomain, grading: int | None = None, terms: int = 3,
                 max_power: int = 3) -> SigmaForm:
    """Random Sigma form; with ``grading`` every term has that grading."""
    out = SigmaForm(dom)
    for _ in range(terms):
        if grading is None:
            I = _subset(rng, dom.m)
            K = tuple(rng.randint(0, max_power) for _ in range(dom.n))
        else:
            hi = min(dom.m, dom.m - grading)
            lo = max(0, dom.m - grading - max_power * dom.n) if dom.n else hi
            if hi < lo:
                return out
            q = rng.randint(lo, hi)
            rest = dom.m - grading - q
            I = _subset(rng, dom.m, q)
            counts = _powers(rng, dom.n, rest) or {}
            K = tuple(counts.get(a, 0) for a in range(dom.n))
        T = _subset(rng, dom.n) if rng.random() < 0.6 else tuple(range(dom.n))
        out = out + SigmaForm.term(dom, random_coefficient(rng, dom), T, I, K)
    return out


def random_lambda(rng: random.Random, dom: SuperDomain, terms: int = 4) -> FormExpr:
    """Random form of bidegree (-1|n) with polynomial coefficients."""
    out = FormExpr(dom)
    for _ in range(terms):
        S = _subset(rng, dom.m)
        total = len(S) + 1
        counts = _powers(rng, dom.n, total) or {}
        deltas = [(a, counts.get(a, 0)) for a in range(dom.n)]
        out = out + _term(dom, random_coefficient(rng, dom), _subset(rng, dom.n), S, {}, deltas)
    return out


def _even_nilpotent(rng, dom):
    """Random even function built from products of pairs of thetas."""
    out = FormExpr(dom)
    for pair in combinations(range(dom.n), 2):
        if rng.random() < 0.7:
            out = out + word(dom, random_coefficient(rng, dom, 1, 1), [("th", pair[0]), ("th", pair[1])])
    return out


def _odd_cubic(rng, dom):
    out = FormExpr(dom)
    for trip in combinations(range(dom.n), 3):
        if rng.random() < 0.7:
            out = out + word(dom, random_coefficient(rng, dom, 1, 1), [("th", a) for a in trip])
    return out


def random_chart(rng: random.Random, dom: SuperDomain, x_dependent: bool = True) -> ChartMap:
    """A polynomial chart change with triangular ``f_0`` and invertible ``chi``.

    ``f^i = x^i + poly(x^1..x^{i-1}) + O(th^2)`` and
    ``chi^a = sum_b chi^a_b(x) th^b + O(th^3)``, where ``chi(x)`` is a
    constant invertible matrix plus (optionally) linear terms in x.
    """
    even = []
    for i in range(dom.m):
        f = coord(dom, i)
        for j in range(i):
            if rng.random() < 0.5:
                f = f + FormExpr.scalar(dom, dom.x(j) ** rng.randint(1, 2)).scale(_rational(rng))
        if rng.random() < 0.5:
            f = f + FormExpr.scalar(dom, _rational(rng))
        even.append(f + _even_nilpotent(rng, dom))
    while True:
        const = [[_rational(rng) if rng.random() < 0.6 else Fraction(0) for _ in range(dom.n)]
                 for _ in range(dom.n)]
        for a in range(dom.n):
            if not const[a][a]:
                const[a][a] = Fraction(1)
        odd = []
        for a in range(dom.n):
            chi = FormExpr(dom)
            for b in range(dom.n):
                c = dom.coeff(const[a][b])
                if x_dependent and dom.m and rng.random() < 0.4:
                    c = c + dom.x(rng.randrange(dom.m)) * dom.coeff(_rational(rng))
                if c:
                    chi = chi + theta(dom, b).scale(c)
            odd.append(chi + _odd_cubic(rng, dom))
        try:
            return ChartMap(dom, tuple(even), tuple(odd))
        except ValueError:
            continue
