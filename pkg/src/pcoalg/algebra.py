"""Graded algebra of forms in the distributional realisation.

A term is ``coeff(x) * th^T * dx^S * dth^P * delta^(k)(dth)...`` where
``th``, ``dx`` and the deltas are odd, ``dth`` is even and the coefficient is
an exact rational function of the even coordinates.  Every odd generator has a
rank (thetas < dxs < deltas, then by index) and a monomial stores its odd
generators sorted by rank, so a product is normalised by counting the
inversions needed to merge the two rank sequences.

Rewrite rules applied on every product:

* repeated ``th``, ``dx`` or two deltas on the same index give zero;
* ``dth^a * delta^(k)(dth^a) = -k delta^(k-1)(dth^a)`` (zero for ``k = 0``),
  applied repeatedly, so ``dth^p delta^(k) = (-1)^p k!/(k-p)! delta^(k-p)``.

Monomials are plain tuples ``(thetas, dxs, dths, deltas)`` with ``dths`` and
``deltas`` given as sorted ``(index, power_or_order)`` pairs.
"""

from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache
from math import factorial

from sympy import QQ

from .domain import SuperDomain, cadd, canon, cmul

ONE = ((), (), (), ())


# --------------------------------------------------------------------------
# monomials

def mono_parity(mono) -> int:
    return (len(mono[0]) + len(mono[1]) + len(mono[3])) & 1


def mono_degree(mono) -> int:
    return len(mono[1]) + sum(p for _, p in mono[2]) - sum(k for _, k in mono[3])


def mono_picture(mono) -> int:
    return len(mono[3])


def _odd_keys(mono):
    th, dx, _, dl = mono
    return [(0, a) for a in th] + [(1, i) for i in dx] + [(2, a) for a, _ in dl]


@lru_cache(maxsize=1 << 18)
def mono_mul(a, b):
    """Product of two canonical monomials as ``(integer factor, monomial)``.

    Returns ``None`` when the product vanishes.
    """
    th_a, dx_a, dth_a, dl_a = a
    th_b, dx_b, dth_b, dl_b = b
    if th_a and th_b and not set(th_a).isdisjoint(th_b):
        return None
    if dx_a and dx_b and not set(dx_a).isdisjoint(dx_b):
        return None
    deltas = dict(dl_a)
    for idx, k in dl_b:
        if idx in deltas:
            return None
        deltas[idx] = k
    ka = _odd_keys(a)
    inversions = 0
    if ka:
        na = len(ka)
        for v in _odd_keys(b):
            inversions += na - bisect_right(ka, v)
    factor = -1 if inversions & 1 else 1
    powers = dict(dth_a)
    for idx, p in dth_b:
        powers[idx] = powers.get(idx, 0) + p
    for idx in [i for i in powers if i in deltas]:
        p = powers.pop(idx)
        k = deltas[idx]
        if p > k:
            return None
        factor *= (-1) ** p * (factorial(k) // factorial(k - p))
        deltas[idx] = k - p
    mono = (
        tuple(sorted(th_a + th_b)),
        tuple(sorted(dx_a + dx_b)),
        tuple(sorted(powers.items())),
        tuple(sorted(deltas.items())),
    )
    return factor, mono


def generator(kind: str, index: int, order: int = 0):
    """Monomial of a single generator; ``kind`` is th, dx, dth or delta."""
    if kind == "th":
        return ((index,), (), (), ())
    if kind == "dx":
        return ((), (index,), (), ())
    if kind == "dth":
        return ((), (), ((index, 1),), ())
    if kind == "delta":
        if order < 0:
            raise ValueError("delta derivative order must be non-negative")
        return ((), (), (), ((index, order),))
    raise ValueError(f"unknown generator kind {kind!r}")


# --------------------------------------------------------------------------
# expressions

class FormExpr:
    """Finite sum of canonical monomials with exact coefficients.

    ``tails`` records truncated series.  Each entry ``W`` stands for an
    unknown remainder of the form ``W * T``; ``None`` is a remainder about
    which nothing is known.  Products shrink witnesses and drop those that
    become zero, which is how an annihilated remainder clears the flag.
    """

    __slots__ = ("domain", "terms", "tails")

    def __init__(self, domain: SuperDomain, terms=None, tails=()):
        self.domain = domain
        self.terms = {} if terms is None else terms
        self.tails = tuple(tails)

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, domain):
        return cls(domain)

    @classmethod
    def scalar(cls, domain, c):
        c = domain.coeff(c)
        return cls(domain, {ONE: c} if c else {})

    @classmethod
    def monomial(cls, domain, mono, c=1):
        c = domain.coeff(c)
        return cls(domain, {mono: c} if c else {})

    @classmethod
    def from_terms(cls, domain, pairs, tails=()):
        """Build from ``(mono, coeff)`` pairs, summing duplicates."""
        out = {}
        for mono, c in pairs:
            _acc(out, mono, c)
        return cls(domain, _clean(domain, out), tails)

    # properties -----------------------------------------------------------

    @property
    def truncated(self) -> bool:
        return bool(self.tails)

    @property
    def iszero(self) -> bool:
        return not self.terms and not self.tails

    def exact(self) -> "FormExpr":
        """The same expression with the truncation record dropped."""
        return FormExpr(self.domain, dict(self.terms))

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, mono):
        return self.terms.get(mono, self.domain.ring.zero)

    def parity_part(self, parity: int) -> "FormExpr":
        return FormExpr(self.domain, {m: c for m, c in self.terms.items() if mono_parity(m) == parity})

    def degree_part(self, degree: int) -> "FormExpr":
        return FormExpr(self.domain, {m: c for m, c in self.terms.items() if mono_degree(m) == degree})

    def picture_part(self, picture: int) -> "FormExpr":
        return FormExpr(self.domain, {m: c for m, c in self.terms.items() if mono_picture(m) == picture})

    def parities(self) -> set[int]:
        return {mono_parity(m) for m in self.terms}

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FormExpr):
            if other.domain != self.domain:
                raise ValueError(f"mismatched domains {self.domain!r} and {other.domain!r}")
            return other
        return FormExpr.scalar(self.domain, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            _acc(out, mono, c)
        return FormExpr(self.domain, _clean(self.domain, out), _merge_tails(self.tails, other.tails))

    __radd__ = __add__

    def __neg__(self):
        return FormExpr(self.domain, {m: -c for m, c in self.terms.items()}, self.tails)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "FormExpr":
        """Multiply by an even scalar coefficient (commutes with everything)."""
        c = self.domain.coeff(c)
        if not c:
            return FormExpr(self.domain)
        out = {m: canon(self.domain, cmul(v, c)) for m, v in self.terms.items()}
        return FormExpr(self.domain, {m: v for m, v in out.items() if v}, self.tails)

    def __mul__(self, other):
        if isinstance(other, FormExpr):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative powers are not defined for forms")
        out = FormExpr.scalar(self.domain, 1)
        for _ in range(p):
            out = wedge(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, FormExpr):
            if other.domain != self.domain:
                return False
        else:
            try:
                other = FormExpr.scalar(self.domain, other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms and self.truncated == other.truncated

    __hash__ = None

    def __repr__(self):
        from .cli.printer import format_expr

        return f"FormExpr({format_expr(self)})"

    def __str__(self):
        from .cli.printer import format_expr

        return format_expr(self)


def _acc(out, mono, c):
    if mono in out:
        out[mono] = cadd(out[mono], c)
    else:
        out[mono] = c


def _clean(domain, terms):
    return {m: canon(domain, c) for m, c in terms.items() if c}


def _same(a, b):
    return a is b or (a is not None and b is not None and a.terms == b.terms)


def _merge_tails(*groups):
    out = []
    for group in groups:
        for w in group:
            if w is not None and not w.terms:
                continue
            if not any(_same(w, seen) for seen in out):
                out.append(w)
    return tuple(out)


def derivation_tails(tails, op):
    """Witnesses after applying a derivation ``op`` to ``W*T``: ``op(W)`` and ``W``."""
    out = []
    for w in tails:
        if w is None:
            out.append(None)
        else:
            out.extend([op(w), w])
    return _merge_tails(out)


def opaque_tails(*exprs):
    return (None,) if any(e.truncated for e in exprs) else ()


# --------------------------------------------------------------------------
# products

def _wedge_exact(a: FormExpr, b: FormExpr) -> FormExpr:
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            hit = mono_mul(ma, mb)
            if hit is None:
                continue
            factor, mono = hit
            prod = cmul(ca, cb)
            _acc(out, mono, prod * factor if factor != 1 else prod)
    return FormExpr(a.domain, _clean(a.domain, out))


def wedge(a: FormExpr, b: FormExpr) -> FormExpr:
    """Graded product with the Deligne sign rule, normalised."""
    if a.domain != b.domain:
        raise ValueError(f"mismatched domains {a.domain!r} and {b.domain!r}")
    result = _wedge_exact(a, b)
    if not a.tails and not b.tails:
        return result
    tails = []
    a0, b0 = a.exact(), b.exact()
    for w in a.tails:
        if w is None:
            tails.append(None)
            continue
        for h in (0, 1):
            tails.append(_wedge_exact(w, b0.parity_part(h)))
        for wb in b.tails:
            if wb is None:
                tails.append(None)
                continue
            for h in (0, 1):
                tails.append(_wedge_exact(w, wb.parity_part(h)))
    for wb in b.tails:
        tails.append(None if wb is None else _wedge_exact(a0, wb))
    result.tails = _merge_tails(tails)
    return result


def wedge_all(domain, factors) -> FormExpr:
    out = FormExpr.scalar(domain, 1)
    for f in factors:
        out = wedge(out, f)
    return out


# --------------------------------------------------------------------------
# constructors

def one(domain):
    return FormExpr.scalar(domain, 1)


def theta(domain, a):
    return FormExpr.monomial(domain, generator("th", a))


def dx(domain, i):
    return FormExpr.monomial(domain, generator("dx", i))


def dtheta(domain, a):
    return FormExpr.monomial(domain, generator("dth", a))


def delta(domain, a, order=0):
    return FormExpr.monomial(domain, generator("delta", a, order))


def coord(domain, i):
    """The even coordinate ``x^i`` as a degree-0 form."""
    return FormExpr.scalar(domain, domain.x(i))


def word(domain, coeff, gens) -> FormExpr:
    """Multiply out a word of generators given as ``(kind, index[, order])`` tuples."""
    out = FormExpr.scalar(domain, coeff)
    for g in gens:
        out = wedge(out, FormExpr.monomial(domain, generator(*g)))
    return out


def mono_word(mono):
    """Generator word of a canonical monomial, in canonical order."""
    th, dxs, dths, dls = mono
    gens = [("th", a) for a in th] + [("dx", i) for i in dxs]
    for a, p in dths:
        gens.extend([("dth", a)] * p)
    gens.extend(("delta", a, k) for a, k in dls)
    return gens


def normalize(a: FormExpr) -> FormExpr:
    """Re-derive every term from its generator word; idempotent."""
    out = FormExpr(a.domain, tails=a.tails)
    for mono, c in a.terms.items():
        out = out + word(a.domain, c, mono_word(mono))
    out.tails = a.tails
    return out


# --------------------------------------------------------------------------
# gradings

def bidegree(a: FormExpr):
    """``(degree, picture)`` of a homogeneous expression; ``None`` for zero."""
    found = {(mono_degree(m), mono_picture(m)) for m in a.terms}
    if not found:
        return None
    if len(found) > 1:
        raise ValueError(f"inhomogeneous expression, bidegrees found: {sorted(found)}")
    return found.pop()


def is_nilpotent(a: FormExpr) -> bool:
    """True when every term carries a theta or a dx factor."""
    return all(m[0] or m[1] for m in a.terms)


# --------------------------------------------------------------------------
# functions of the odd coordinates

def reduced(a: FormExpr):
    """Coefficient of the constant monomial (theta = 0, no forms)."""
    return a.terms.get(ONE, a.domain.ring.zero)


def invert_even(f: FormExpr) -> FormExpr:
    """Inverse of an even function whose reduced part is nonzero.

    ``(f0 + n)^-1 = f0^-1 sum_j (-n/f0)^j``; the sum stops because ``n`` is
    nilpotent.
    """
    for mono in f.terms:
        if mono[1] or mono[2] or mono[3] or mono_parity(mono):
            raise ValueError("invert_even needs an even function of the coordinates")
    dom = f.domain
    f0 = reduced(f)
    if not f0:
        raise ZeroDivisionError("reduced part is zero; element is not invertible")
    inv0 = canon(dom, dom.field(1) / dom.field(f0))
    nil = FormExpr(dom, {m: c for m, c in f.terms.items() if m != ONE})
    step = -(nil.scale(inv0))
    out = one(dom)
    power = one(dom)
    while True:
        power = wedge(power, step)
        if not power.terms:
            break
        out = out + power
    return out.scale(inv0)


# --------------------------------------------------------------------------
# delta of a shifted argument

def _dth_coefficient(arg: FormExpr, index: int):
    pure = ((), (), ((index, 1),), ())
    return arg.terms.get(pure)


def delta_series(argument: FormExpr, base_index: int, order: int) -> FormExpr:
    """``delta(dth^a + R) = sum_p R^p/p! delta^(p)(dth^a)``.

    Exact when ``R`` is nilpotent; otherwise summed to ``p = order`` with a
    remainder witness ``R^(order+1)``.
    """
    dom = argument.domain
    if argument.truncated:
        raise ValueError("argument of delta must be exact")
    for mono in argument.terms:
        if mono_parity(mono) or mono_picture(mono) or mono_degree(mono) != 1:
            raise ValueError("delta argument must be an even one-form without picture")
    c = _dth_coefficient(argument, base_index)
    if c is None or c != 1:
        raise ValueError(f"argument must contain {dom.dth_names[base_index]} with coefficient 1")
    shift = argument - dtheta(dom, base_index)
    if any(dict(m[2]).get(base_index) for m in shift.terms):
        raise ValueError("shift may not depend on the base generator")
    if order < 0:
        raise ValueError("series order must be non-negative")
    exact = is_nilpotent(shift)
    out = FormExpr(dom)
    power = one(dom)
    p = 0
    while power.terms and (exact or p <= order):
        out = out + wedge(power, delta(dom, base_index, p)).scale(QQ(1, factorial(p)))
        p += 1
        power = wedge(power, shift)
    if power.terms:
        out.tails = (power,)
    return out
