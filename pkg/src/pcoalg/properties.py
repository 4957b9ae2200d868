"""Seeded property checks shared by the test-suite and ``verify`` commands.

Each check returns a :class:`PropertyReport` listing every sample whose
residual is not exactly zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import FormExpr
from .calculus import d
from .charts import DEFAULT_ORDER, pullback
from .complexes import (
    SigmaForm,
    delta_sigma,
    f_all,
    f_via_pco,
    from_sigma,
    homotopy_maps,
    pco_st,
    to_sigma,
    z_all,
)
from .random_forms import (
    random_chart,
    random_form,
    random_integral_form,
    random_lambda,
    random_sigma,
    random_superform,
)


@dataclass
class PropertyReport:
    name: str
    samples: int = 0
    failures: list = field(default_factory=list)  # (label, residual)

    @property
    def ok(self) -> bool:
        return self.samples > 0 and not self.failures

    def add(self, label, residual):
        self.samples += 1
        if not _is_zero(residual):
            self.failures.append((label, residual))

    def summary(self) -> str:
        return f"{self.name}: {self.samples - len(self.failures)}/{self.samples} exact"


def _is_zero(r) -> bool:
    if isinstance(r, (FormExpr, SigmaForm)):
        return r.iszero
    return not r


def _rng(seed_or_rng):
    return seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)


def check_d_squared(dom, seed=0, samples=500) -> PropertyReport:
    rng = _rng(seed)
    rep = PropertyReport("d^2 = 0")
    for k in range(samples):
        omega = random_form(rng, dom)
        rep.add(k, d(d(omega)))
    return rep


def check_delta_squared(dom, seed=0, samples=500) -> PropertyReport:
    rng = _rng(seed)
    rep = PropertyReport("delta^2 = 0")
    for k in range(samples):
        s = random_sigma(rng, dom)
        rep.add(k, delta_sigma(delta_sigma(s)))
    return rep


def check_cochain_f(dom, seed=0, samples=100, degrees=None) -> PropertyReport:
    """``f^(p+1)(d omega) = delta f^(p)(omega)`` for random superforms of degree p."""
    rng = _rng(seed)
    rep = PropertyReport("f d = delta f")
    for p in degrees if degrees is not None else range(dom.m + 1):
        for k in range(samples):
            omega = random_superform(rng, dom, p)
            rep.add((p, k), f_all(d(omega)) - delta_sigma(f_all(omega)))
    return rep


def check_f_routes(dom, seed=0, samples=100) -> PropertyReport:
    """The pairing formula against ``to_sigma(omega ^ Y_st)``."""
    rng = _rng(seed)
    rep = PropertyReport("f = to_sigma(omega Y_st)")
    for k in range(samples):
        omega = random_superform(rng, dom, rng.randint(0, dom.m))
        rep.add(k, f_all(omega) - f_via_pco(omega))
    return rep


def check_cochain_z(dom, seed=0, samples=100) -> PropertyReport:
    rng = _rng(seed)
    rep = PropertyReport("Z delta = d Z")
    for k in range(samples):
        s = random_sigma(rng, dom, rng.randint(-1, dom.m))
        rep.add(k, z_all(delta_sigma(s)) - d(z_all(s)))
    return rep


def check_quasi_inverse(dom, seed=0, samples=100) -> tuple[PropertyReport, PropertyReport]:
    """``f Z f = f`` on random superforms, ``Z f Z = Z`` on random integral forms."""
    rng = _rng(seed)
    fzf = PropertyReport("f Z f = f")
    zfz = PropertyReport("Z f Z = Z")
    for k in range(samples):
        omega = random_superform(rng, dom, rng.randint(0, dom.m))
        fo = f_all(omega)
        fzf.add(k, f_all(z_all(fo)) - fo)
    for k in range(samples):
        # Z kills every delta derivative, so favour plain deltas
        s = to_sigma(random_integral_form(rng, dom, max_order=rng.choice([0, 0, 1, 3])))
        zs = z_all(s)
        zfz.add(k, z_all(f_all(zs)) - zs)
    return fzf, zfz


def check_intertwining(dom, seed=0, samples=200) -> tuple[PropertyReport, PropertyReport]:
    rng = _rng(seed)
    inter = PropertyReport("from_sigma delta = d from_sigma")
    trip = PropertyReport("from_sigma to_sigma = id")
    for k in range(samples):
        a = random_integral_form(rng, dom)
        s = to_sigma(a)
        trip.add(k, from_sigma(s) - a)
        inter.add(k, from_sigma(delta_sigma(s)) - d(from_sigma(s)))
    return inter, trip


def check_globality(dom, seed=0, samples=20, order=DEFAULT_ORDER) -> tuple[PropertyReport, PropertyReport]:
    """Y_st and the section ``prod th D (x) pi_dx^1..pi_dx^m`` under random charts."""
    rng = _rng(seed)
    y = pco_st(dom)
    section = to_sigma(y)
    form_rep = PropertyReport("pullback Y_st = Y_st")
    sigma_rep = PropertyReport("pullback of the Sigma section")
    for k in range(samples):
        cmap = random_chart(rng, dom)
        pulled = pullback(cmap, y, order)
        form_rep.add(k, pulled - y)
        sigma_rep.add(k, to_sigma(pullback(cmap, from_sigma(section), order)) - section)
    return form_rep, sigma_rep


def check_homotopy(lam: FormExpr, seed=0, samples=100) -> tuple[PropertyReport, PropertyReport]:
    """``e - f = delta h + h d`` and ``delta h(omega) = (delta h)(omega) - h(d omega)``."""
    rng = _rng(seed)
    dom = lam.domain
    data = homotopy_maps(lam)
    main = PropertyReport("e - f = delta h + h d")
    leibniz = PropertyReport("delta h = (delta h) - h d")
    for k in range(samples):
        omega = random_superform(rng, dom, rng.randint(0, dom.m))
        lhs = data.e(omega) - f_all(omega)
        rhs = delta_sigma(data.h(omega)) + data.h(d(omega))
        main.add(k, lhs - rhs)
        leibniz.add(k, delta_sigma(data.h(omega)) - (data.dh(omega) - data.h(d(omega))))
    return main, leibniz


def random_lambdas(dom, seed=0, count=10) -> list:
    rng = _rng(seed)
    return [random_lambda(rng, dom) for _ in range(count)]


def check_naturality(dom, seed=0, samples=20, order=DEFAULT_ORDER, x_dependent=False,
                     max_order=3) -> PropertyReport:
    """``pullback d = d pullback`` on random forms with nilpotent delta shifts.

    With ``x_dependent`` the odd linear part of the charts depends on x and
    coefficients become rational functions; expressions then grow quickly,
    so keep ``max_order`` small.
    """
    rng = _rng(seed)
    rep = PropertyReport("pullback d = d pullback")
    for k in range(samples):
        cmap = random_chart(rng, dom, x_dependent)
        omega = random_superform(rng, dom, rng.randint(0, dom.m)) + random_integral_form(rng, dom, 2, max_order)
        rep.add(k, pullback(cmap, d(omega), order) - d(pullback(cmap, omega, order)))
    return rep


def check_functoriality(dom, seed=0, samples=10, order=DEFAULT_ORDER, x_dependent=False,
                        max_order=3) -> PropertyReport:
    """``pullback(m2 o m1) = pullback(m1) pullback(m2)``; see :func:`check_naturality`."""
    from .charts import compose

    rng = _rng(seed)
    rep = PropertyReport("pullback(m2 o m1) = pullback(m1) pullback(m2)")
    for k in range(samples):
        m1, m2 = random_chart(rng, dom, x_dependent), random_chart(rng, dom, x_dependent)
        omega = random_superform(rng, dom, rng.randint(0, dom.m)) + random_integral_form(rng, dom, 2, max_order)
        rep.add(k, pullback(compose(m2, m1, order), omega, order) - pullback(m1, pullback(m2, omega, order), order))
    return rep
