"""Local coordinate domains R^(m|n) and their exact coefficient rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from sympy import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.rings import PolyElement, PolyRing


@dataclass(frozen=True)
class SuperDomain:
    """A coordinate patch with ``m`` even coordinates and ``n`` odd ones.

    Names default to ``x1..xm`` and ``th1..thn``; the one-form generators are
    named by prefixing ``d`` unless ``dx_names``/``dth_names`` are given (the
    Chevalley-Eilenberg module uses this to print Maurer-Cartan generators).
    """

    m: int
    n: int
    even_names: tuple[str, ...] = ()
    odd_names: tuple[str, ...] = ()
    dx_names: tuple[str, ...] = field(default=(), compare=True)
    dth_names: tuple[str, ...] = field(default=(), compare=True)

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"dimensions must be non-negative, got ({self.m}|{self.n})")
        if not self.even_names:
            object.__setattr__(self, "even_names", tuple(f"x{i + 1}" for i in range(self.m)))
        if not self.odd_names:
            object.__setattr__(self, "odd_names", tuple(f"th{a + 1}" for a in range(self.n)))
        if not self.dx_names:
            object.__setattr__(self, "dx_names", tuple("d" + s for s in self.even_names))
        if not self.dth_names:
            object.__setattr__(self, "dth_names", tuple("d" + s for s in self.odd_names))
        lengths = (len(self.even_names), len(self.dx_names), len(self.odd_names), len(self.dth_names))
        if lengths != (self.m, self.m, self.n, self.n):
            raise ValueError("coordinate name lists do not match the dimensions")
        names = self.even_names + self.odd_names + self.dx_names + self.dth_names
        if len(set(names)) != len(names):
            raise ValueError(f"coordinate names must be distinct: {names}")

    def __repr__(self):
        return f"SuperDomain({self.m}|{self.n})"

    @cached_property
    def field(self) -> FracField:
        return FracField(list(self.even_names), QQ)

    @cached_property
    def ring(self) -> PolyRing:
        # the field's own ring, so polynomials and fractions mix without conversion
        return self.field.ring

    @cached_property
    def names(self) -> dict[str, tuple[str, int]]:
        """Map every generator name to ``(kind, index)``."""
        table = {}
        for kind, seq in (("x", self.even_names), ("th", self.odd_names),
                          ("dx", self.dx_names), ("dth", self.dth_names)):
            for i, s in enumerate(seq):
                table[s] = (kind, i)
        return table

    # coefficient handling -------------------------------------------------

    def coeff(self, c):
        """Coerce a scalar (int, Fraction, sympy element) into the coefficient ring."""
        if isinstance(c, PolyElement):
            if c.ring is self.ring:
                return c
            if c.is_ground:
                return self.ring.ground_new(c.LC if c else QQ(0))
            return self.ring(c)
        if isinstance(c, FracElement):
            return canon(self, c)
        if hasattr(c, "terms") and hasattr(c, "domain"):
            if any(mono != ((), (), (), ()) for mono in c.terms) or c.tails:
                raise TypeError("only constant-in-odd-variables functions can act as scalars")
            return c.terms.get(((), (), (), ()), self.ring.zero)
        if hasattr(c, "numerator") and hasattr(c, "denominator"):
            return self.ring.ground_new(QQ(int(c.numerator), int(c.denominator)))
        return self.ring.ground_new(QQ(c))

    def x(self, i: int):
        """The even coordinate ``x^i`` as a coefficient (0-based index)."""
        return self.ring.gens[i]


def canon(dom: SuperDomain, c):
    """Canonical coefficient: a polynomial whenever the denominator is constant."""
    if isinstance(c, FracElement):
        den = c.denom
        if den.is_ground:
            num = c.numer
            lc = den.LC
            out = num.quo_ground(lc) if lc != 1 else num
            return dom.ring(out) if out.ring is not dom.ring else out
        return c
    return c


def cmul(a, b):
    """``a * b`` with any fraction on the left.

    ``PolyElement * FracElement`` first tries (and fails) to coerce the
    fraction into the ground field, which is very slow for large fractions.
    """
    if isinstance(b, FracElement) and not isinstance(a, FracElement):
        return b * a
    return a * b


def cadd(a, b):
    if isinstance(b, FracElement) and not isinstance(a, FracElement):
        return b + a
    return a + b


def is_polynomial(c) -> bool:
    return not isinstance(c, FracElement)


def reduced_constant(c):
    """Value of a coefficient when it is a rational constant, else ``None``."""
    if isinstance(c, FracElement):
        return None
    if c.is_ground:
        return c.LC if c else QQ(0)
    return None
