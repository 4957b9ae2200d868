"""Exterior derivative, contractions, Lie derivatives and brackets."""

from __future__ import annotations

from sympy.polys.rings import PolyElement

from .algebra import (
    FormExpr,
    _acc,
    _clean,
    derivation_tails,
    generator,
    mono_degree,
    mono_mul,
    mono_parity,
    mono_picture,
    wedge,
)
from .domain import SuperDomain, canon


def _is_constant(c) -> bool:
    return isinstance(c, PolyElement) and c.is_ground


def cdiff(dom: SuperDomain, c, i: int):
    """Partial derivative of a coefficient along ``x^i``."""
    if isinstance(c, PolyElement):
        return c.diff(dom.ring.gens[i])
    return canon(dom, c.diff(dom.field.gens[i]))


# --------------------------------------------------------------------------
# exterior derivative

def _d_exact(a: FormExpr) -> FormExpr:
    dom = a.domain
    out = {}
    for mono, c in a.terms.items():
        if not _is_constant(c):
            for i in range(dom.m):
                dc = cdiff(dom, c, i)
                if not dc:
                    continue
                hit = mono_mul(generator("dx", i), mono)
                if hit is not None:
                    _acc(out, hit[1], dc * hit[0])
        th = mono[0]
        for j, alpha in enumerate(th):
            rest = (th[:j] + th[j + 1:],) + mono[1:]
            hit = mono_mul(generator("dth", alpha), rest)
            if hit is None:
                continue
            factor, m2 = hit
            if j & 1:
                factor = -factor
            _acc(out, m2, c * factor)
    return FormExpr(dom, _clean(dom, out))


def d(a: FormExpr) -> FormExpr:
    """de Rham differential: odd derivation acting from the left."""
    out = _d_exact(a)
    if a.tails:
        out.tails = derivation_tails(a.tails, _d_exact)
    return out


# --------------------------------------------------------------------------
# vector fields

class VectorField:
    """``sum_A X^A(x, th) d/dz^A`` with components written on the left.

    Keys are ``("x", i)`` or ``("th", a)``; components are functions, i.e.
    forms of degree 0 and picture 0.
    """

    __slots__ = ("domain", "comps", "parity")

    def __init__(self, domain: SuperDomain, comps: dict, parity: int | None = None):
        self.domain = domain
        self.comps = {k: v for k, v in comps.items() if v.terms}
        found = set()
        for (kind, _), f in self.comps.items():
            for mono in f.terms:
                if mono[1] or mono[2] or mono[3]:
                    raise ValueError("vector field components must be functions")
                found.add((mono_parity(mono) + (kind == "th")) & 1)
        if len(found) > 1:
            raise ValueError("vector field is not of homogeneous parity")
        if parity is None:
            parity = found.pop() if found else 0
        elif found and found != {parity}:
            raise ValueError(f"declared parity {parity} does not match the components")
        self.parity = parity

    @classmethod
    def partial_x(cls, domain, i):
        return cls(domain, {("x", i): FormExpr.scalar(domain, 1)}, 0)

    @classmethod
    def partial_th(cls, domain, a):
        return cls(domain, {("th", a): FormExpr.scalar(domain, 1)}, 1)

    def __add__(self, other):
        if other.domain != self.domain:
            raise ValueError("mismatched domains")
        if self.comps and other.comps and self.parity != other.parity:
            raise ValueError("cannot add vector fields of different parity")
        comps = dict(self.comps)
        for k, v in other.comps.items():
            comps[k] = comps[k] + v if k in comps else v
        par = self.parity if self.comps else other.parity
        return VectorField(self.domain, comps, par)

    def __neg__(self):
        return VectorField(self.domain, {k: -v for k, v in self.comps.items()}, self.parity)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, f):
        """Left multiplication by a scalar or a function."""
        if not isinstance(f, FormExpr):
            f = FormExpr.scalar(self.domain, f)
        comps = {k: wedge(f, v) for k, v in self.comps.items()}
        return VectorField(self.domain, comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        keys = set(self.comps) | set(other.comps)
        zero = FormExpr(self.domain)
        return all(self.comps.get(k, zero) == other.comps.get(k, zero) for k in keys)

    __hash__ = None

    def __repr__(self):
        from .cli.printer import format_expr

        parts = []
        for (kind, i), f in sorted(self.comps.items()):
            name = self.domain.even_names[i] if kind == "x" else self.domain.odd_names[i]
            parts.append(f"({format_expr(f)})*d/d{name}")
        return "VectorField(" + (" + ".join(parts) or "0") + ")"

    def is_zero(self):
        return not self.comps


# --------------------------------------------------------------------------
# contraction

def _contract_basis(kind, idx, mono):
    """``iota_{d/dz}`` on a canonical monomial; returns ``(factor, mono)`` or None."""
    th, dxs, dths, dls = mono
    if kind == "x":
        if idx not in dxs:
            return None
        r = dxs.index(idx)
        sign = -1 if (len(th) + r) & 1 else 1
        return sign, (th, dxs[:r] + dxs[r + 1:], dths, dls)
    powers = dict(dths)
    if idx in powers:
        p = powers[idx]
        if p == 1:
            del powers[idx]
        else:
            powers[idx] = p - 1
        return p, (th, dxs, tuple(sorted(powers.items())), dls)
    orders = dict(dls)
    if idx in orders:
        orders[idx] += 1
        return 1, (th, dxs, dths, tuple(sorted(orders.items())))
    return None


def contract_basis(domain, kind: str, idx: int, a: FormExpr) -> FormExpr:
    """Contraction along a coordinate vector field (``kind`` is x or th)."""
    out = {}
    for mono, c in a.terms.items():
        hit = _contract_basis(kind, idx, mono)
        if hit is not None:
            factor, m2 = hit
            _acc(out, m2, c * factor)
    return FormExpr(domain, _clean(domain, out))


def _contract_exact(X: VectorField, a: FormExpr) -> FormExpr:
    out = FormExpr(a.domain)
    for (kind, idx), f in X.comps.items():
        part = contract_basis(a.domain, kind, idx, a)
        if part.terms:
            out = out + wedge(f, part)
    return out


def contract(X: VectorField, a: FormExpr) -> FormExpr:
    """Interior product; a graded derivation of degree -1 and parity |X|+1."""
    if X.domain != a.domain:
        raise ValueError("mismatched domains")
    out = _contract_exact(X, a.exact())
    if a.tails:
        out.tails = derivation_tails(a.tails, lambda w: _contract_exact(X, w))
    return out


def contraction_parity(X: VectorField) -> int:
    return (X.parity + 1) & 1


def lie_derivative(X: VectorField, a: FormExpr) -> FormExpr:
    """``L_X = d i_X - (-1)^{|i_X|} i_X d``."""
    first = d(contract(X, a))
    second = contract(X, d(a))
    if contraction_parity(X):
        return first + second
    return first - second


# --------------------------------------------------------------------------
# action on functions and brackets

def _check_function(f: FormExpr):
    for mono in f.terms:
        if mono_degree(mono) or mono_picture(mono) or mono[1] or mono[2]:
            raise ValueError("expected a function (degree 0, picture 0)")


def apply_field(X: VectorField, f: FormExpr) -> FormExpr:
    """Derivative ``X(f)`` of a function, with left derivatives along theta."""
    _check_function(f)
    return contract(X, d(f))


def graded_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y] = X Y - (-1)^{|X||Y|} Y X`` as operators on functions."""
    if X.domain != Y.domain:
        raise ValueError("mismatched domains")
    sign = -1 if (X.parity * Y.parity) & 1 else 1
    comps = {}
    for key in set(X.comps) | set(Y.comps):
        val = FormExpr(X.domain)
        if key in Y.comps:
            val = val + apply_field(X, Y.comps[key])
        if key in X.comps:
            val = val - apply_field(Y, X.comps[key]).scale(sign)
        comps[key] = val
    return VectorField(X.domain, comps, (X.parity + Y.parity) & 1)
