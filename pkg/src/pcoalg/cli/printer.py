"""Canonical text form of expressions; re-parses to the same expression."""

from __future__ import annotations

from sympy.polys.fields import FracElement

from ..algebra import mono_degree, mono_picture


def _poly_text(c) -> str:
    return str(c).replace(" ", "")


def format_coefficient(c) -> tuple[str, str]:
    """Split a coefficient into a sign and a text body (``""`` for 1)."""
    if isinstance(c, FracElement):
        return "+", f"({_poly_text(c.numer)})/({_poly_text(c.denom)})"
    if c.is_ground:
        q = c.LC
        sign = "-" if q < 0 else "+"
        q = abs(q)
        return sign, "" if q == 1 else str(q)
    if len(c.terms()) == 1:
        (exps, q), = c.terms()
        sign = "-" if q < 0 else "+"
        return sign, _poly_text(-c if q < 0 else c)
    return "+", f"({_poly_text(c)})"


def format_generators(domain, mono) -> list[str]:
    th, dxs, dths, dls = mono
    out = [domain.odd_names[a] for a in th]
    out += [domain.dx_names[i] for i in dxs]
    for a, p in dths:
        name = domain.dth_names[a]
        out.append(name if p == 1 else f"{name}**{p}")
    for a, k in dls:
        name = domain.dth_names[a]
        out.append(f"delta({name})" if k == 0 else f"delta^{k}({name})")
    return out


def sort_key(mono):
    return (mono_picture(mono), mono_degree(mono), mono)


def format_term(domain, mono, c) -> tuple[str, str]:
    sign, body = format_coefficient(c)
    gens = format_generators(domain, mono)
    factors = ([body] if body else []) + gens
    return sign, "*".join(factors) if factors else "1"


def format_expr(a) -> str:
    parts = []
    for mono in sorted(a.terms, key=sort_key):
        sign, text = format_term(a.domain, mono, a.terms[mono])
        if not parts:
            parts.append(text if sign == "+" else "-" + text)
        else:
            parts.append(f"{sign} {text}")
    for w in a.tails:
        parts.append("+ O()" if w is None else f"+ O({format_expr(w)})")
    if not parts:
        return "0"
    if parts[0].startswith("+ "):
        parts[0] = parts[0][2:]
    return " ".join(parts)


def term_strings(a) -> list[str]:
    """One string per term (sign included) for structured reports."""
    out = []
    for mono in sorted(a.terms, key=sort_key):
        sign, text = format_term(a.domain, mono, a.terms[mono])
        out.append(text if sign == "+" else "-" + text)
    return out
