"""Integral forms as ``Ber (x) S^.(Pi T)``, the dictionary with distributional
forms, the PCO cochain maps f and Z, the operator delta and chain homotopies.

A :class:`SigmaForm` term is ``g(x, th) * D (x) pi_dx^I (x) pi_dth^K`` with
``I`` a sorted tuple of even indices and ``K`` a tuple of ``n`` powers.  The
dictionary sends it to ``g * iota_x^{I[-1]} ... iota_x^{I[0]} iota_th^K D``
(smallest index contracted first) with ``D = dx^1...dx^m delta(dth^1)...``.

Resolved signs (all checked by the test-suite against d):

* ``delta(g D pi^I pi^K)`` has an x-part
  ``sum_r (-1)^(|T| + q-1-r) d_{I[r]} c th^T D pi^{I - I[r]} pi^K``
  for ``g = c th^T`` and ``q = |I|``, and a th-part
  ``- sum_a k_a d^L_a(g) D pi^I pi^{K - e_a}`` with left th-derivatives.
* ``f(c dx^S) = (-1)^(p(m+n+1)) eps(S, C) c_0 th^1...th^n D pi^C`` where C
  is the complement of S; this equals ``to_sigma(omega ^ Y_st)``.
* ``Z(c th^1...th^n D pi^C) = (-1)^(pn) c iota^C(dx^1...dx^m)``.
* ``h(omega) = to_sigma(P(omega) ^ Lambda)`` with ``P = (-1)^parity``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from sympy import QQ

from .algebra import (
    FormExpr,
    _acc,
    _clean,
    bidegree,
    delta,
    dx,
    mono_degree,
    mono_parity,
    mono_picture,
    theta,
    wedge,
    wedge_all,
)
from .calculus import cdiff, contract_basis, d
from .domain import SuperDomain, cmul


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# --------------------------------------------------------------------------
# Sigma forms

class SigmaForm:
    """Finite sum ``sum c * th^T * D (x) pi_dx^I (x) pi_dth^K``.

    ``terms`` maps ``(T, I, K)`` to a nonzero coefficient.
    """

    __slots__ = ("domain", "terms")

    def __init__(self, domain: SuperDomain, terms=None):
        self.domain = domain
        self.terms = {} if terms is None else terms

    @classmethod
    def term(cls, domain, coeff, thetas=(), xs=(), ths=None):
        """One term; ``xs`` may be unsorted (the permutation sign is applied)."""
        if len(set(xs)) != len(xs):
            return cls(domain)
        if len(set(thetas)) != len(thetas):
            return cls(domain)
        c = domain.coeff(coeff) * _perm_sign(xs) * _perm_sign(thetas)
        K = tuple(ths) if ths is not None else (0,) * domain.n
        key = (tuple(sorted(thetas)), tuple(sorted(xs)), K)
        return cls(domain, {key: c} if c else {})

    def grading(self, key) -> int:
        return self.domain.m - len(key[1]) - sum(key[2])

    def gradings(self) -> set[int]:
        return {self.grading(k) for k in self.terms}

    def grade_part(self, p: int) -> "SigmaForm":
        return SigmaForm(self.domain, {k: c for k, c in self.terms.items() if self.grading(k) == p})

    def __add__(self, other):
        if other.domain != self.domain:
            raise ValueError("mismatched domains")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return SigmaForm(self.domain, _clean(self.domain, out))

    def __neg__(self):
        return SigmaForm(self.domain, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.domain.coeff(c)
        return SigmaForm(self.domain, _clean(self.domain, {k: cmul(v, c) for k, v in self.terms.items()}))

    def __eq__(self, other):
        if not isinstance(other, SigmaForm):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    __hash__ = None

    @property
    def iszero(self):
        return not self.terms

    def __repr__(self):
        return f"SigmaForm({self})"

    def __str__(self):
        from .cli.printer import format_coefficient

        dom = self.domain
        parts = []
        for (T, I, K) in sorted(self.terms):
            sign, body = format_coefficient(self.terms[(T, I, K)])
            factors = ([body] if body else []) + [dom.odd_names[a] for a in T] + ["D"]
            factors += [f"pi_d/d{dom.even_names[i]}" for i in I]
            for a, k in enumerate(K):
                if k:
                    name = f"pi_d/d{dom.odd_names[a]}"
                    factors.append(name if k == 1 else f"{name}**{k}")
            text = "*".join(factors)
            parts.append(("- " if sign == "-" else "+ ") + text)
        if not parts:
            return "0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


# --------------------------------------------------------------------------
# the spacetime PCO and the dictionary

def pco_st(domain: SuperDomain) -> FormExpr:
    """``th^1...th^n delta(dth^1)...delta(dth^n)``; the constant 1 when ``n = 0``."""
    thetas = [theta(domain, a) for a in range(domain.n)]
    deltas = [delta(domain, a) for a in range(domain.n)]
    return wedge_all(domain, thetas + deltas)


def berezinian_form(domain: SuperDomain) -> FormExpr:
    """``D = dx^1...dx^m delta(dth^1)...delta(dth^n)``."""
    return wedge_all(domain, [dx(domain, i) for i in range(domain.m)]
                     + [delta(domain, a) for a in range(domain.n)])


def _complement(domain, I):
    return tuple(i for i in range(domain.m) if i not in I)


def _dictionary_sign(I) -> int:
    return -1 if sum(c - r for r, c in enumerate(I)) & 1 else 1


def from_sigma(s: SigmaForm) -> FormExpr:
    """Distributional realisation of a Sigma form (picture n)."""
    dom = s.domain
    out = {}
    for (T, I, K), c in s.terms.items():
        S = _complement(dom, I)
        mono = (T, S, (), tuple((a, K[a]) for a in range(dom.n)))
        _acc(out, mono, c * _dictionary_sign(I))
    return FormExpr(dom, _clean(dom, out))


def to_sigma(a: FormExpr) -> SigmaForm:
    """Inverse of :func:`from_sigma`; defined on the picture-n sector."""
    dom = a.domain
    if a.truncated:
        raise ValueError("to_sigma needs an exact expression")
    out = {}
    for (T, S, dths, dls), c in a.terms.items():
        if len(dls) != dom.n:
            raise ValueError(f"to_sigma needs picture {dom.n}, found a term of picture {len(dls)}")
        I = _complement(dom, S)
        K = tuple(k for _, k in dls)
        _acc(out, (T, I, K), c * _dictionary_sign(I))
    return SigmaForm(dom, _clean(dom, out))


# --------------------------------------------------------------------------
# delta

def delta_sigma(s: SigmaForm) -> SigmaForm:
    """The differential of the integral-form complex, raising the grading by 1."""
    dom = s.domain
    out = {}
    for (T, I, K), c in s.terms.items():
        q = len(I)
        for r, i in enumerate(I):
            dc = cdiff(dom, c, i)
            if dc:
                sign = -1 if (len(T) + q - 1 - r) & 1 else 1
                _acc(out, (T, I[:r] + I[r + 1:], K), dc * sign)
        for a, k in enumerate(K):
            if k and a in T:
                j = T.index(a)
                sign = 1 if j & 1 else -1
                K2 = K[:a] + (k - 1,) + K[a + 1:]
                _acc(out, (T[:j] + T[j + 1:], I, K2), c * (sign * k))
    return SigmaForm(dom, _clean(dom, out))


# --------------------------------------------------------------------------
# f and Z

def _check_superform(omega: FormExpr, p: int):
    if omega.truncated:
        raise ValueError("PCO maps need exact input")
    for mono in omega.terms:
        if mono_picture(mono):
            raise ValueError("f is defined on superforms (picture 0)")
        if mono_degree(mono) != p:
            raise ValueError(f"f^({p}) applied to a term of degree {mono_degree(mono)}")


def f_map(p: int, omega: FormExpr) -> SigmaForm:
    """f^(p) through the pairing with ``prod th D (x) pi_dx^1...pi_dx^m``.

    The dx-components are antisymmetrised and summed against the full
    permutation symbol on ``m`` indices.
    """
    dom = omega.domain
    _check_superform(omega, p)
    m = dom.m
    if p < 0 or p > m:
        return SigmaForm(dom)
    comps = {}
    for (T, S, dths, dls), c in omega.terms.items():
        if T or dths:
            continue
        comps[S] = c
    if not comps:
        return SigmaForm(dom)
    prefactor = QQ(-1 if (p * (m + dom.n + 1)) & 1 else 1, factorial(p) * factorial(m - p))
    everything = tuple(range(dom.n))
    out = SigmaForm(dom)
    for perm in permutations(range(m)):
        head = perm[:p]
        key = tuple(sorted(head))
        if key not in comps:
            continue
        # antisymmetric component omega_{head} and epsilon_{perm}
        weight = comps[key] * (_perm_sign(head) * _perm_sign(perm)) * prefactor
        out = out + SigmaForm.term(dom, weight, everything, perm[p:])
    return out


def f_via_pco(omega: FormExpr) -> SigmaForm:
    """``to_sigma(omega ^ Y_st)``: the same map realised by the spacetime PCO."""
    return to_sigma(wedge(omega, pco_st(omega.domain)))


def f_all(omega: FormExpr) -> SigmaForm:
    out = SigmaForm(omega.domain)
    for p in sorted({mono_degree(mo) for mo in omega.terms}):
        out = out + f_map(p, omega.degree_part(p))
    return out


def _top_dx(dom):
    return wedge_all(dom, [dx(dom, i) for i in range(dom.m)])


def z_map(p: int, s: SigmaForm) -> FormExpr:
    """Quasi-inverse Z^(p): keep the top theta component of terms free of pi_dth."""
    dom = s.domain
    bad = s.gradings() - {p}
    if bad:
        raise ValueError(f"Z^({p}) applied to Sigma terms of grading {sorted(bad)}")
    if p < 0 or p > dom.m:
        return FormExpr(dom)
    top = tuple(range(dom.n))
    sign = -1 if (p * dom.n) & 1 else 1
    out = FormExpr(dom)
    for (T, I, K), c in s.terms.items():
        if any(K) or T != top:
            continue
        piece = _top_dx(dom)
        for i in I:
            piece = contract_basis(dom, "x", i, piece)
        out = out + piece.scale(c * sign)
    return out


def z_all(s: SigmaForm) -> FormExpr:
    out = FormExpr(s.domain)
    for p in sorted(s.gradings()):
        out = out + z_map(p, s.grade_part(p))
    return out


# --------------------------------------------------------------------------
# homotopies

def parity_twist(omega: FormExpr) -> FormExpr:
    """``P(omega) = (-1)^{|omega|} omega`` term by term."""
    return FormExpr(omega.domain, {m: (-c if mono_parity(m) else c) for m, c in omega.terms.items()},
                    omega.tails)


@dataclass(frozen=True, eq=False)
class HomotopyData:
    """Maps induced by a (-1|n)-form ``Lambda``.

    ``h(omega) = to_sigma(P(omega) ^ Lambda)`` is odd, ``dh`` is the map
    induced by ``d Lambda`` and ``e = f + dh``; then
    ``e - f = delta h + h d`` and ``delta(h(omega)) = dh(omega) - h(d omega)``.
    """

    lam: FormExpr

    def h(self, omega: FormExpr) -> SigmaForm:
        return to_sigma(wedge(parity_twist(omega), self.lam))

    def dh(self, omega: FormExpr) -> SigmaForm:
        return to_sigma(wedge(omega, d(self.lam)))

    def e(self, omega: FormExpr) -> SigmaForm:
        return f_all(omega) + self.dh(omega)


def homotopy_maps(lam: FormExpr) -> HomotopyData:
    dom = lam.domain
    if lam.truncated:
        raise ValueError("Lambda must be exact")
    if lam.terms and bidegree(lam) != (-1, dom.n):
        raise ValueError(f"Lambda must have bidegree (-1|{dom.n}), got {bidegree(lam)}")
    return HomotopyData(lam)


# --------------------------------------------------------------------------
# verification

@dataclass
class Residual:
    check: str
    residual: object  # FormExpr or SigmaForm

    @property
    def ok(self) -> bool:
        r = self.residual
        if isinstance(r, FormExpr):
            return r.iszero
        return r.iszero


def verify_cochain_family(superforms=(), sigma_forms=(), f=f_all, z=z_all) -> list[Residual]:
    """Exact residuals of the cochain and quasi-inverse identities.

    Each input contributes one record per identity; a record passes when its
    residual is exactly zero.
    """
    out = []
    for k, omega in enumerate(superforms):
        out.append(Residual(f"cochain f #{k}", f(d(omega)) - delta_sigma(f(omega))))
        fo = f(omega)
        out.append(Residual(f"fZf = f #{k}", f(z(fo)) - fo))
    for k, s in enumerate(sigma_forms):
        out.append(Residual(f"cochain Z #{k}", z(delta_sigma(s)) - d(z(s))))
        zs = z(s)
        out.append(Residual(f"ZfZ = Z #{k}", z(f(zs)) - zs))
    return out


__all__ = [
    "HomotopyData", "Residual", "SigmaForm", "berezinian_form", "delta_sigma", "f_all", "f_map",
    "f_via_pco", "from_sigma", "homotopy_maps", "parity_twist", "pco_st", "to_sigma",
    "verify_cochain_family", "z_all", "z_map",
]
