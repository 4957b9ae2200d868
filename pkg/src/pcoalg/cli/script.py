"""Batch scripts: parse commands, run them, produce check records.

Commands (one per line, ``#`` starts a comment)::

    domain NAME = (m|n) [even a b c] [odd p q]
    domain NAME = d3n1
    map NAME: x1 -> E, th1 -> E, ...
    let NAME = E
    compute E
    check NAME: E == E
    verify NAME: FAMILY [key=value ...]

Every record has the fields ``check``, ``status``, ``residual_terms`` and
``truncated_flag`` in that order.  ``status`` is one of ``pass``, ``fail``,
``undecided`` (exact part zero but a truncated remainder survives), ``error``
or ``value`` (for ``compute``).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from ..algebra import FormExpr
from ..charts import DEFAULT_ORDER
from ..complexes import SigmaForm
from ..domain import SuperDomain
from .parser import Environment, ParseError, parse_expr, parse_map
from .printer import format_expr, term_strings

FAILING = ("fail", "undecided", "error")


@dataclass
class Command:
    line: int
    kind: str
    name: str
    body: str
    text: str


@dataclass
class Script:
    commands: list = field(default_factory=list)


@dataclass
class Options:
    order: int = DEFAULT_ORDER
    seed: int = 0
    max_terms: int | None = None


_DOMAIN = re.compile(r"domain\s+(\w+)\s*=\s*(.+)$")
_NAMED = re.compile(r"(map|check|verify)\s+([\w.\-]+)\s*:\s*(.*)$")
_LET = re.compile(r"let\s+(\w+)\s*=\s*(.+)$")
_COMPUTE = re.compile(r"compute\s+(.+)$")


def parse_script(text: str) -> Script:
    """Split a script into commands; syntax of expressions is checked at run time."""
    script = Script()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for kind, pattern in (("domain", _DOMAIN), ("named", _NAMED), ("let", _LET), ("compute", _COMPUTE)):
            m = pattern.match(line)
            if not m:
                continue
            if kind == "named":
                script.commands.append(Command(lineno, m.group(1), m.group(2), m.group(3), line))
            elif kind == "compute":
                script.commands.append(Command(lineno, "compute", "", m.group(1), line))
            else:
                script.commands.append(Command(lineno, kind, m.group(1), m.group(2), line))
            break
        else:
            script.commands.append(Command(lineno, "invalid", "", line, line))
    return script


def record(check, status, residual_terms=(), truncated=False) -> dict:
    return {"check": check, "status": status, "residual_terms": list(residual_terms),
            "truncated_flag": bool(truncated)}


def _residual_record(name, residual) -> dict:
    if isinstance(residual, SigmaForm):
        return record(name, "pass" if residual.iszero else "fail",
                      [] if residual.iszero else [str(residual)])
    terms = term_strings(residual)
    if terms:
        status = "fail"
    elif residual.truncated:
        status = "undecided"
    else:
        status = "pass"
    if residual.truncated:
        terms = terms + [format_expr(FormExpr(residual.domain, tails=residual.tails))]
    return record(name, status, terms, residual.truncated)


class Runner:
    def __init__(self, options: Options | None = None):
        self.options = options or Options()
        self.domains = {}
        self.env = None

    # commands -----------------------------------------------------------------

    def _domain(self, cmd: Command):
        from ..models import d3n1_model, lambda_susy, pco_susy, printed_lambda

        body = cmd.body.strip()
        if body == "d3n1":
            model = d3n1_model()
            env = Environment(model.domain, order=self.options.order)
            for a, v in enumerate(model.V):
                env.bindings[f"V{a}"] = v
            for al, p in enumerate(model.psi):
                env.bindings[f"psi{al + 1}"] = p
            env.bindings["Ysusy"] = pco_susy(model)
            env.bindings["Lsusy"] = lambda_susy(model)
            env.bindings["Lprinted"] = printed_lambda(model)
            self.domains[cmd.name] = env
            self.env = env
            return
        m = re.fullmatch(r"\(\s*(\d+)\s*\|\s*(\d+)\s*\)\s*(.*)", body)
        if not m:
            raise ParseError(f"expected '(m|n)' or 'd3n1' after '=', got {body!r}")
        mm, nn, rest = int(m.group(1)), int(m.group(2)), m.group(3).split()
        even, odd, target = [], [], None
        for word in rest:
            if word in ("even", "odd"):
                target = even if word == "even" else odd
            elif target is None:
                raise ParseError(f"unexpected {word!r}; name lists start with 'even' or 'odd'")
            else:
                target.append(word)
        dom = SuperDomain(mm, nn, tuple(even), tuple(odd))
        self.env = Environment(dom, order=self.options.order)
        self.domains[cmd.name] = self.env

    def _need_env(self):
        if self.env is None:
            raise ParseError("no domain declared yet")
        return self.env

    def _guard(self, expr: FormExpr) -> FormExpr:
        limit = self.options.max_terms
        if limit is not None and len(expr.terms) > limit:
            raise ValueError(f"expression has {len(expr.terms)} terms, above --max-terms {limit}")
        return expr

    def _eval(self, text):
        return self._guard(parse_expr(text, self._need_env()))

    def run_command(self, cmd: Command):
        kind = cmd.kind
        if kind == "invalid":
            raise ParseError(f"unrecognised command: {cmd.body!r}")
        if kind == "domain":
            self._domain(cmd)
            return None
        if kind == "let":
            if cmd.name in self._need_env().domain.names:
                raise ParseError(f"cannot rebind the coordinate name {cmd.name!r}")
            self.env.bindings[cmd.name] = self._eval(cmd.body)
            return None
        if kind == "map":
            self.env = self._need_env()
            self.env.maps[cmd.name] = parse_map(cmd.body, self.env)
            return None
        if kind == "compute":
            value = self._eval(cmd.body)
            terms = term_strings(value)
            if value.truncated:
                terms.append(format_expr(FormExpr(value.domain, tails=value.tails)))
            return record(f"compute {cmd.body.strip()}", "value", terms or ["0"], value.truncated)
        if kind == "check":
            lhs, sep, rhs = cmd.body.partition("==")
            if not sep:
                raise ParseError("check needs 'lhs == rhs'")
            residual = self._eval(lhs) - self._eval(rhs)
            return _residual_record(cmd.name, residual)
        if kind == "verify":
            from .families import run_family

            parts = cmd.body.split()
            if not parts:
                raise ParseError("verify needs a family name")
            params = {}
            for p in parts[1:]:
                key, sep, value = p.partition("=")
                if not sep:
                    raise ParseError(f"expected key=value, got {p!r}")
                params[key] = value
            rng = random.Random(self.options.seed)
            return run_family(cmd.name, parts[0], params, self, rng)
        raise ParseError(f"unknown command {kind!r}")

    def run(self, script: Script) -> list[dict]:
        out = []
        for cmd in script.commands:
            try:
                rec = self.run_command(cmd)
            except Exception as exc:  # runtime errors become failed records
                label = cmd.name if cmd.kind in ("check", "verify") and cmd.name else f"line {cmd.line}: {cmd.text}"
                rec = record(label, "error", [f"{type(exc).__name__}: {exc}"])
            if rec is not None:
                out.append(rec)
        return out


def run(script, options: Options | None = None) -> list[dict]:
    """Run a :class:`Script` (or script text) and return its records."""
    if isinstance(script, str):
        script = parse_script(script)
    return Runner(options).run(script)


def exit_status(records) -> int:
    return 1 if any(r["status"] in FAILING for r in records) else 0
