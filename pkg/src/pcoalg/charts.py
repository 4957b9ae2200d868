"""Polynomial changes of coordinates and the pullback of forms with deltas."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from math import factorial

from sympy import QQ
from sympy.polys.fields import FracElement

from .algebra import (
    ONE,
    FormExpr,
    coord,
    delta,
    delta_series,
    dtheta,
    invert_even,
    is_nilpotent,
    mono_degree,
    mono_parity,
    mono_picture,
    one,
    reduced,
    theta,
    wedge,
)
from .calculus import VectorField, cdiff, contract, d
from .domain import SuperDomain, canon, is_polynomial

DEFAULT_ORDER = 4


def determinant(rows, zero, unit, mul=None):
    """Laplace expansion over any commutative ring (small matrices only)."""
    mul = mul or (lambda a, b: a * b)
    size = len(rows)
    if size == 0:
        return unit
    if size == 1:
        return rows[0][0]
    total = zero
    for j in range(size):
        entry = rows[0][j]
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = mul(entry, determinant(minor, zero, unit, mul))
        total = total + term if j % 2 == 0 else total - term
    return total


def _is_function(f: FormExpr) -> bool:
    return all(not (m[1] or m[2] or m[3]) for m in f.terms)


@dataclass(frozen=True, eq=False)
class ChartMap:
    """``x'^i = f^i(x, th)``, ``th'^a = chi^a(x, th)`` with polynomial entries.

    The primed coordinates are the ones the forms being pulled back are
    written in; the map expresses them through the unprimed ones.
    """

    domain: SuperDomain
    even: tuple
    odd: tuple

    def __post_init__(self):
        dom = self.domain
        if len(self.even) != dom.m or len(self.odd) != dom.n:
            raise ValueError("chart map must give every coordinate")
        for f in self.even:
            if not _is_function(f) or f.parities() - {0}:
                raise ValueError("even components must be even functions")
        for chi in self.odd:
            if not _is_function(chi) or chi.parities() - {1}:
                raise ValueError("odd components must be odd functions")
        if dom.n and not determinant(self.linear_part(), dom.ring.zero, dom.ring.one):
            raise ValueError("reduced odd Jacobian det(chi) vanishes identically")

    @classmethod
    def identity(cls, domain):
        return cls(domain, tuple(coord(domain, i) for i in range(domain.m)),
                   tuple(theta(domain, a) for a in range(domain.n)))

    def linear_part(self):
        """Matrix ``chi^a_b(x)``: coefficient of ``th^b`` in ``chi^a``."""
        return [[chi.terms.get(((b,), (), (), ()), self.domain.ring.zero)
                 for b in range(self.domain.n)] for chi in self.odd]

    def reduced_even_jacobian(self):
        dom = self.domain
        return [[cdiff(dom, reduced(f), j) for j in range(dom.m)] for f in self.even]


# --------------------------------------------------------------------------
# substitution into coefficients

def _substitute_poly(dom, poly, images, cache):
    out = FormExpr(dom)
    for exps, q in poly.terms():
        term = FormExpr.scalar(dom, dom.ring.ground_new(q))
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = images[i] ** e
                term = wedge(term, cache[key])
        out = out + term
    return out


def substitute_coefficient(cmap: ChartMap, c, cache=None) -> FormExpr:
    """``c(f(x, th))`` as an even function, expanded exactly."""
    dom = cmap.domain
    cache = {} if cache is None else cache
    if isinstance(c, FracElement):
        num = _substitute_poly(dom, c.numer, cmap.even, cache)
        den = _substitute_poly(dom, c.denom, cmap.even, cache)
        return wedge(num, invert_even(den))
    return _substitute_poly(dom, c, cmap.even, cache)


# --------------------------------------------------------------------------
# deltas of general arguments

def _split_argument(arg: FormExpr, n: int):
    """Return the dth-coefficient row (functions) and the remainder."""
    dom = arg.domain
    row = [FormExpr(dom) for _ in range(n)]
    rest = {}
    for mono, c in arg.terms.items():
        if mono_parity(mono) or mono_picture(mono) or mono_degree(mono) != 1:
            raise ValueError("delta arguments must be even one-forms without picture")
        th, dxs, dths, _ = mono
        if dths:
            (b, _), = dths
            row[b] = row[b] + FormExpr(dom, {(th, (), (), ()): c})
        else:
            rest[mono] = c
    return row, FormExpr(dom, rest)


def _pivot_columns(red, q, n, prefer, zero, unit):
    candidates = []
    if prefer is not None and len(prefer) == q:
        candidates.append(tuple(prefer))
    candidates.extend(c for c in combinations(range(n), q) if c not in candidates)
    for cols in candidates:
        sub = [[row[b] for b in cols] for row in red]
        if determinant(sub, zero, unit):
            return cols
    raise ValueError("delta arguments are not invertible modulo nilpotents")


def delta_transform(arguments, orders=None, order: int = DEFAULT_ORDER, prefer=None) -> FormExpr:
    """``prod_a delta^(k_a)(A^a)`` for even one-forms ``A^a`` (in the given order).

    Writing ``A = N dth_B + rho`` with ``N`` invertible modulo nilpotents,
    the product equals ``det(N)^-1 prod_b delta(dth^b + (N^-1 rho)^b)``; each
    factor is then expanded by :func:`delta_series` and derivative orders are
    applied as contractions along ``(N^-1)^T d/dth``.
    """
    if not arguments:
        raise ValueError("delta_transform needs at least one argument")
    dom = arguments[0].domain
    orders = list(orders) if orders is not None else [0] * len(arguments)
    q, n = len(arguments), dom.n
    if q > n:
        return FormExpr(dom)
    rows, rests = zip(*(_split_argument(a, n) for a in arguments))
    red = [[reduced(e) for e in row] for row in rows]
    cols = _pivot_columns(red, q, n, prefer, dom.ring.zero, dom.ring.one)
    N = [[row[b] for b in cols] for row in rows]
    zero, unit = FormExpr(dom), one(dom)
    det = determinant(N, zero, unit, wedge)
    others = [b for b in range(n) if b not in cols]
    remainders = []
    for a in range(q):
        r = rests[a]
        for b in others:
            if rows[a][b].terms:
                r = r + wedge(rows[a][b], dtheta(dom, b))
        remainders.append(r)
    cofactors = [[None] * q for _ in range(q)]  # cofactors[b][a] = cofactor(a, b)
    for a in range(q):
        for b in range(q):
            minor = [r[:b] + r[b + 1:] for i, r in enumerate(N) if i != a]
            cof = determinant(minor, zero, unit, wedge)
            cofactors[b][a] = -cof if (a + b) % 2 else cof
    base = reduced(det)
    polynomial = all(is_polynomial(c) for e in [det, *remainders] for c in e.terms.values())
    if polynomial and not base.is_ground:
        return _delta_transform_common(dom, cols, det, base, cofactors, remainders, orders, order)
    det_inv = invert_even(det)
    inverse = [[wedge(c, det_inv) for c in row] for row in cofactors]
    out = det_inv
    for i, b in enumerate(cols):
        shift = FormExpr(dom)
        for a in range(q):
            if inverse[i][a].terms and remainders[a].terms:
                shift = shift + wedge(inverse[i][a], remainders[a])
        out = wedge(out, delta_series(dtheta(dom, b) + shift, b, order))
    for a, k in enumerate(orders):
        if k:
            field = VectorField(dom, {("th", b): inverse[i][a] for i, b in enumerate(cols)}, 1)
            for _ in range(k):
                out = contract(field, out)
    return out


def _bmul(x: dict, y: dict) -> dict:
    out = {}
    for e1, f1 in x.items():
        for e2, f2 in y.items():
            piece = wedge(f1, f2)
            if piece.terms or piece.tails:
                out[e1 + e2] = out[e1 + e2] + piece if e1 + e2 in out else piece
    return out


def _badd(x: dict, y: dict) -> dict:
    out = dict(x)
    for e, f in y.items():
        out[e] = out[e] + f if e in out else f
    return {e: f for e, f in out.items() if f.terms or f.tails}


def _delta_transform_common(dom, cols, det, base, cofactors, remainders, orders, order):
    """Same computation with every denominator a power of ``base = det_red``.

    Values are kept as ``{e: F_e}`` meaning ``sum F_e / base^e`` with
    polynomial ``F_e``; rational functions are formed once at the end.
    """
    q = len(cols)
    # 1/det = sum_j (-nil)^j / base^(j+1)
    nil = det - FormExpr.scalar(dom, base)
    det_inv = {}
    power = one(dom)
    j = 0
    while power.terms:
        det_inv[j + 1] = power
        power = wedge(power, -nil)
        j += 1
    inverse = [[_bmul({0: c}, det_inv) for c in row] for row in cofactors]
    acc = det_inv
    for i, b in enumerate(cols):
        shift = {}
        for a in range(q):
            if remainders[a].terms:
                shift = _badd(shift, _bmul(inverse[i][a], {0: remainders[a]}))
        exact = all(is_nilpotent(f) for f in shift.values())
        series, power, p = {}, {0: one(dom)}, 0
        while power and (exact or p <= order):
            factor = {0: delta(dom, b, p).scale(QQ(1, factorial(p)))}
            series = _badd(series, _bmul(power, factor))
            p += 1
            power = _bmul(power, shift)
        if power:
            tails = FormExpr(dom, tails=tuple(power.values()))
            series[0] = series[0] + tails if 0 in series else tails
        acc = _bmul(acc, series)
    for a, k in enumerate(orders):
        for _ in range(k):
            nxt = {}
            for e, f in acc.items():
                for j, vals in _field_buckets(inverse, cols, a).items():
                    nxt = _badd(nxt, {e + j: contract(VectorField(dom, vals, 1), f)})
            acc = nxt
    if not acc:
        return FormExpr(dom)
    top = max(acc)
    num = FormExpr(dom)
    for e, f in acc.items():
        num = num + (f.scale(base ** (top - e)) if e != top else f)
    return num.scale(dom.field(1) / dom.field(base ** top))


def _field_buckets(inverse, cols, a) -> dict:
    """Components of ``sum_i inverse[i][a] d/dth^cols[i]`` grouped by exponent."""
    out = {}
    for i, b in enumerate(cols):
        for j, f in inverse[i][a].items():
            out.setdefault(j, {})[("th", b)] = f
    return out


# --------------------------------------------------------------------------
# pullback

class _Images:
    def __init__(self, cmap: ChartMap, order: int):
        self.cmap = cmap
        self.order = order
        self.coeff_cache = {}
        self.power_cache = {}
        self.dx = [d(f) for f in cmap.even]
        self.dth = [d(chi) for chi in cmap.odd]

    def coefficient(self, c):
        key = c
        try:
            hash(key)
        except TypeError:
            key = str(c)
        if key not in self.coeff_cache:
            self.coeff_cache[key] = substitute_coefficient(self.cmap, c, self.power_cache)
        return self.coeff_cache[key]


def _pull_mono(img: _Images, mono) -> FormExpr:
    dom = img.cmap.domain
    th, dxs, dths, dls = mono
    out = one(dom)
    for a in th:
        out = wedge(out, img.cmap.odd[a])
    for i in dxs:
        out = wedge(out, img.dx[i])
    for a, p in dths:
        out = wedge(out, img.dth[a] ** p)
    if dls:
        idx = [a for a, _ in dls]
        out = wedge(out, delta_transform([img.dth[a] for a in idx], [k for _, k in dls],
                                         img.order, prefer=idx))
    return out


def pullback(cmap: ChartMap, a: FormExpr, order: int = DEFAULT_ORDER) -> FormExpr:
    """Substitute the chart into ``a``; an algebra homomorphism commuting with d."""
    if cmap.domain != a.domain:
        raise ValueError("mismatched domains")
    img = _Images(cmap, order)
    out = FormExpr(a.domain)
    cache = {}
    for mono, c in a.terms.items():
        if mono not in cache:
            cache[mono] = _pull_mono(img, mono)
        piece = cache[mono]
        if not piece.terms and not piece.tails:
            continue
        coeff = img.coefficient(c) if mono != ONE or not c.is_ground else FormExpr.scalar(a.domain, c)
        out = out + wedge(coeff, piece)
    if a.tails:
        extra = [None if w is None else pullback(cmap, w, order) for w in a.tails]
        out = out + FormExpr(a.domain, tails=extra)
    return out


def compose(outer: ChartMap, inner: ChartMap, order: int = DEFAULT_ORDER) -> ChartMap:
    """The chart whose pullback is ``pullback(inner, pullback(outer, .))``."""
    return ChartMap(inner.domain,
                    tuple(pullback(inner, f, order) for f in outer.even),
                    tuple(pullback(inner, chi, order) for chi in outer.odd))


def berezinian_reduced(cmap: ChartMap):
    """``det(d f0 / dx) / det(chi)`` with all nilpotent terms dropped."""
    dom = cmap.domain
    ring = dom.ring
    jac = determinant(cmap.reduced_even_jacobian(), ring.zero, ring.one)
    chi = determinant(cmap.linear_part(), ring.zero, ring.one)
    if not chi:
        raise ValueError("det(chi) vanishes identically")
    return canon(dom, dom.field(jac) / dom.field(chi))
