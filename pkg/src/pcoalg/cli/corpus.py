"""Round-trip corpus for the printer and parser.

The corpus mixes hand-written expressions (every worked example in the
docs, typed in the script grammar) with seeded random forms, Sigma
dictionary images, homotopy forms and chart pullbacks with rational
coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..algebra import FormExpr
from ..charts import pullback
from ..complexes import from_sigma
from ..domain import SuperDomain
from ..random_forms import (
    random_chart,
    random_form,
    random_integral_form,
    random_lambda,
    random_sigma,
    random_superform,
)
from .parser import Environment, parse_expr, parse_map
from .printer import format_expr

# ((m, n), maps, expression text)
FIXTURES = [
    ((2, 2), {}, "th1*dx1 * th2*dx2"),
    ((2, 2), {}, "dth1*delta(dth1)"),
    ((2, 2), {}, "delta(dth1)*delta(dth1)"),
    ((2, 2), {}, "dth1*delta^1(dth1)"),
    ((2, 2), {}, "dth1**2*delta^1(dth1)"),
    ((2, 2), {}, "th1*th1*dx1"),
    ((1, 2), {}, "th1*th2*delta(dth1)^delta(dth2)"),
    ((2, 1), {}, "dx1^dx2^delta(dth1)"),
    ((3, 2), {}, "dx1*dx2*th1*delta^2(dth1)*delta(dth2)"),
    ((3, 2), {}, "delta(dth1 + dth2)"),
    ((3, 2), {}, "delta(dth1 + 0*th1*th2*dx1)"),
    ((3, 2), {}, "delta(dth1 + dth2)*delta(dth2)"),
    ((3, 2), {}, "d(th1*th2*delta(dth1)*delta(dth2))"),
    ((3, 2), {}, "d(x1)"),
    ((3, 2), {}, "d(th1*delta(dth1))"),
    ((3, 2), {}, "iota(dth1, delta(dth1))"),
    ((3, 2), {}, "iota(dx1, dx1)"),
    ((3, 2), {}, "iota(dx1, dx1*dx2)"),
    ((3, 2), {}, "lie(dx1, x1)"),
    ((1, 2), {"s": "th1 -> 3*th1, th2 -> 3*th2"}, "pullback(s, th1*th2*delta(dth1)*delta(dth2))"),
    ((0, 1), {"s": "th1 -> -5/2*th1"}, "pullback(s, delta(dth1))"),
    ((2, 2), {}, "delta(2*dth1 + dth2)*delta(dth1 - dth2)"),
    ((2, 2), {}, "delta(dth1 + th1*dx1)"),
    ((1, 1), {"s": "x1 -> 2*x1"}, "pullback(s, dx1*delta(dth1))"),
    ((1, 2), {"s": "th1 -> 7*th1, th2 -> 7*th2"}, "pullback(s, dx1*delta(dth1)*delta(dth2))"),
    ((1, 2), {}, "pco_st()"),
    ((1, 0), {}, "pco_st()"),
    ((3, 2), {}, "d(pco_st())"),
    ((3, 2), {}, "x2**2*dx1*dx2*dx3*delta(dth1)*delta(dth2)"),
    ((3, 2), {}, "dsigma(x1**2*dx2*dx3*delta(dth1)*delta(dth2))"),
    ((3, 2), {}, "dsigma(delta(dth1)*delta(dth2)*dx1*dx2*dx3)"),
    ((3, 2), {}, "dsigma(th1*dx1*dx2*dx3*delta^1(dth1)*delta(dth2))"),
    ((3, 2), {}, "f(0, x1**2 + 3*x2*th1*th2)"),
    ((3, 2), {}, "f(0, th1)"),
    ((3, 2), {}, "f(3, dx1*dx2*dx3)"),
    ((3, 2), {}, "Z(3, (x1 + x2*th1*th2)*dx1*dx2*dx3*delta(dth1)*delta(dth2))"),
    ((3, 2), {}, "Z(2, th1*dx1*dx2*dx3*delta^1(dth1)*delta(dth2))"),
    ((1, 2), {}, "Z(0, th1*th2*delta(dth1)*delta(dth2))"),
    ((0, 2), {}, "th1*delta(dth1)*delta(dth2)"),
    ((0, 2), {}, "th1*th2*delta(dth1)*delta(dth2)"),
    ((2, 2), {}, "x1/(1 + x2**2)*dx1 - 1/3*th2*dth1"),
    ((2, 2), {}, "dx1*O(dth2**3) + O()"),
]

D3N1_NAMES = ("V0", "V1", "V2", "psi1", "psi2", "Ysusy", "Lsusy", "Lprinted")


@dataclass
class Entry:
    label: str
    env: Environment
    expr: FormExpr


def _env(shape, cache) -> Environment:
    if shape not in cache:
        cache[shape] = Environment(SuperDomain(*shape))
    return cache[shape]


def fixture_entries() -> list[Entry]:
    cache = {}
    out = []
    for shape, maps, text in FIXTURES:
        env = _env(shape, cache)
        env = Environment(env.domain, maps={k: parse_map(v, env) for k, v in maps.items()})
        out.append(Entry(f"fixture {text}", env, parse_expr(text, env)))
    from ..models import d3n1_model, lambda_susy, pco_susy, printed_lambda

    model = d3n1_model()
    env = Environment(model.domain)
    values = list(model.V) + list(model.psi) + [pco_susy(model), lambda_susy(model), printed_lambda(model)]
    for name, value in zip(D3N1_NAMES, values):
        out.append(Entry(f"d3n1 {name}", env, value))
    out.append(Entry("d3n1 wrong-sign Lambda", env, -printed_lambda(model)))
    return out


def random_entries(count: int, seed: int = 0) -> list[Entry]:
    rng = random.Random(seed)
    specs = [(3, 2), (2, 1), (1, 3), (2, 2), (0, 2)]
    envs = {s: Environment(SuperDomain(*s)) for s in specs}
    named = Environment(SuperDomain(2, 1, ("t", "u"), ("s",)))
    kinds = ["form", "superform", "integral", "sigma", "lambda", "pullback", "rational", "named"]
    out = []
    for k in range(count):
        kind = kinds[k % len(kinds)]
        env = envs[specs[rng.randrange(len(specs))]] if kind != "named" else named
        dom = env.domain
        if kind == "form":
            e = random_form(rng, dom)
        elif kind == "superform":
            e = random_superform(rng, dom, rng.randint(0, dom.m + 1))
        elif kind == "integral":
            e = random_integral_form(rng, dom)
        elif kind == "sigma":
            e = from_sigma(random_sigma(rng, dom))
        elif kind == "lambda":
            e = random_lambda(rng, dom)
        elif kind == "pullback":
            e = pullback(random_chart(rng, dom, x_dependent=False), random_form(rng, dom, 2, 1), 3)
        elif kind == "rational":
            e = pullback(random_chart(rng, dom, x_dependent=True), random_superform(rng, dom, 1, 2), 2)
            if dom.m:
                e = e.scale(dom.field(1) / (dom.field(dom.x(0)) ** 2 + 1))
        else:
            e = random_form(rng, dom)
        out.append(Entry(f"random {kind} {k} on {dom!r}", env, e))
    return out


def corpus(size: int = 200, seed: int = 0) -> list[Entry]:
    fixed = fixture_entries()
    return fixed + random_entries(max(0, size - len(fixed)), seed)


def roundtrip_failures(entries) -> list[tuple[str, str]]:
    """Entries where ``parse(print(e)) != e`` or printing is not canonical."""
    bad = []
    for entry in entries:
        text = format_expr(entry.expr)
        try:
            again = parse_expr(text, Environment(entry.env.domain, order=entry.env.order))
        except ValueError as exc:
            bad.append((entry.label, f"{text}: {exc}"))
            continue
        if again != entry.expr or again.tails != entry.expr.tails:
            bad.append((entry.label, f"{text} re-parsed as {format_expr(again)}"))
        elif format_expr(again) != text:
            bad.append((entry.label, f"printer not canonical: {text} vs {format_expr(again)}"))
    return bad
