"""Recursive-descent parser for the expression language.

Grammar (whitespace-insensitive)::

    expr   := ["+" | "-"] term (("+" | "-") term)*
    term   := factor (("*" | "^" | "/") factor)*
    factor := "-" factor | power
    power  := atom ["**" INT]
    atom   := INT | NAME | NAME "(" [args] ")" | "delta" ["^" INT] "(" expr ")"
            | "(" expr ")" | "O" "(" [expr] ")"

``*`` and ``^`` are both the wedge product; ``/`` divides by a function of
the even coordinates.  Adjacent ``delta(...)`` factors inside one product are
transformed jointly (a change of variables needs all of them at once).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..algebra import ONE, FormExpr, coord, delta, dtheta, dx, theta, wedge
from ..calculus import VectorField, contract, d, lie_derivative
from ..charts import DEFAULT_ORDER, ChartMap, delta_transform, pullback
from ..complexes import delta_sigma, f_map, from_sigma, pco_st, to_sigma, z_map
from ..domain import SuperDomain


class ParseError(ValueError):
    """Syntax or name error with a character position."""

    def __init__(self, message, text="", pos=0):
        self.pos = pos
        self.text = text
        if text:
            pointer = " " * pos + "^"
            message = f"{message} at position {pos}\n  {text}\n  {pointer}"
        super().__init__(message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|==|->|[-+*/^(),|:=]))")


@dataclass
class Token:
    kind: str  # int, name, op, end
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("name", m.group(2), start))
        else:
            out.append(Token("op", m.group(3), start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


@dataclass
class _PendingDelta:
    argument: FormExpr
    order: int


@dataclass
class Environment:
    """Names visible to expressions; ``order`` is the series truncation order."""

    domain: SuperDomain
    bindings: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    order: int = DEFAULT_ORDER


class _Parser:
    def __init__(self, text: str, env: Environment):
        self.text = text
        self.env = env
        self.dom = env.domain
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers --------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, self.text, tok.pos)

    def accept(self, value) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.value)
        self.i += 1
        return v

    # grammar --------------------------------------------------------------

    def parse(self) -> FormExpr:
        out = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        return out

    def expr(self) -> FormExpr:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        out = self.term()
        if negate:
            out = -out
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> FormExpr:
        items = [self.factor()]
        while True:
            if self.accept("*") or self.accept("^"):
                items.append(self.factor())
            elif self.tok.kind == "op" and self.tok.value == "/":
                tok = self.tok
                self.i += 1
                items.append(self._reciprocal(self._value(self.factor(), tok), tok))
            else:
                break
        return self._multiply(items)

    def factor(self):
        if self.accept("-"):
            item = self.factor()
            if isinstance(item, _PendingDelta):
                return [FormExpr.scalar(self.dom, -1), item]
            if isinstance(item, list):
                return [-item[0]] + item[1:]
            return -item
        return self.power()

    def power(self):
        tok = self.tok
        base = self.atom()
        if self.accept("**"):
            p = self.expect_int()
            return self._value(base, tok) ** p
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return FormExpr.scalar(self.dom, int(tok.value))
        if tok.kind == "op" and tok.value == "(":
            self.i += 1
            out = self.expr()
            self.expect(")")
            return out
        if tok.kind != "name":
            raise self.error(f"unexpected {tok.value or 'end of input'!r}")
        name = tok.value
        self.i += 1
        if name == "delta":
            order = 0
            if self.accept("^"):
                order = self.expect_int()
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return _PendingDelta(arg, order)
        if self.tok.kind == "op" and self.tok.value == "(":
            return self.call(name, tok)
        return self.lookup(name, tok)

    # names and calls --------------------------------------------------------

    def lookup(self, name, tok) -> FormExpr:
        if name in self.env.bindings:
            return self.env.bindings[name]
        hit = self.dom.names.get(name)
        if hit is None:
            raise self.error(f"unknown identifier {name!r}", tok)
        kind, idx = hit
        return {"x": coord, "th": theta, "dx": dx, "dth": dtheta}[kind](self.dom, idx)

    def _args(self):
        self.expect("(")
        args = []
        if self.accept(")"):
            return args
        while True:
            start = self.tok
            args.append((start, self.expr()))
            if self.accept(")"):
                return args
            self.expect(",")

    def _direction(self, tok):
        if self.tok.kind != "name" or self.tok.value not in self.dom.names:
            raise self.error("expected a one-form generator name (dx<i> or dth<i>)")
        kind, idx = self.dom.names[self.tok.value]
        if kind not in ("dx", "dth"):
            raise self.error("direction must be a dx or dth generator")
        self.i += 1
        return VectorField.partial_x(self.dom, idx) if kind == "dx" else VectorField.partial_th(self.dom, idx)

    def _int_arg(self):
        neg = self.accept("-")
        v = self.expect_int()
        return -v if neg else v

    def call(self, name, tok):
        dom = self.dom
        if name in ("iota", "lie"):
            self.expect("(")
            field_ = self._direction(tok)
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return contract(field_, arg) if name == "iota" else lie_derivative(field_, arg)
        if name == "pullback":
            self.expect("(")
            if self.tok.kind != "name" or self.tok.value not in self.env.maps:
                raise self.error("expected the name of a defined map")
            cmap = self.env.maps[self.tok.value]
            self.i += 1
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return pullback(cmap, arg, self.env.order)
        if name in ("f", "Z"):
            self.expect("(")
            p = self._int_arg()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            if name == "f":
                return from_sigma(f_map(p, arg))
            return z_map(p, to_sigma(arg))
        if name == "O":
            self.expect("(")
            if self.accept(")"):
                return FormExpr(dom, tails=(None,))
            w = self.expr()
            self.expect(")")
            if w.truncated:
                raise self.error("tail witnesses must be exact", tok)
            return FormExpr(dom, tails=(w,) if w.terms else ())
        args = self._args()
        if name == "d" and len(args) == 1:
            return d(args[0][1])
        if name == "pco_st" and not args:
            return pco_st(dom)
        if name == "dsigma" and len(args) == 1:
            return from_sigma(delta_sigma(to_sigma(args[0][1])))
        raise self.error(f"unknown function {name!r} or wrong number of arguments", tok)

    # products -------------------------------------------------------------

    def _value(self, item, tok):
        if isinstance(item, (_PendingDelta, list)):
            return self._multiply([item])
        return item

    def _reciprocal(self, value: FormExpr, tok):
        if value.truncated or any(mono != ONE for mono in value.terms):
            raise self.error("can only divide by a function of the even coordinates", tok)
        c = value.terms.get(ONE)
        if not c:
            raise self.error("division by zero", tok)
        dom = self.dom
        return FormExpr.scalar(dom, dom.field(1) / dom.field(c))

    def _multiply(self, items) -> FormExpr:
        flat = []
        for it in items:
            flat.extend(it if isinstance(it, list) else [it])
        out = FormExpr.scalar(self.dom, 1)
        group = []
        for it in flat + [None]:
            if isinstance(it, _PendingDelta):
                group.append(it)
                continue
            if group:
                out = wedge(out, self._deltas(group))
                group = []
            if it is not None:
                out = wedge(out, it)
        return out

    def _deltas(self, group) -> FormExpr:
        dom = self.dom
        simple = []
        for g in group:
            arg = g.argument
            if arg.truncated:
                raise ParseError("delta of a truncated expression")
            if len(arg.terms) == 1:
                (mono, c), = arg.terms.items()
                if mono[2] and len(mono[2]) == 1 and mono[2][0][1] == 1 and not (mono[0] or mono[1] or mono[3]) \
                        and c == 1:
                    simple.append(mono[2][0][0])
                    continue
            simple = None
            break
        if simple is not None:
            out = FormExpr.scalar(dom, 1)
            for a, g in zip(simple, group):
                out = wedge(out, delta(dom, a, g.order))
            return out
        return delta_transform([g.argument for g in group], [g.order for g in group], self.env.order)


def parse_expr(text: str, env) -> FormExpr:
    """Evaluate ``text``; ``env`` is an :class:`Environment` or a :class:`SuperDomain`."""
    if isinstance(env, SuperDomain):
        env = Environment(env)
    return _Parser(text, env).parse()


def parse_map(text: str, env: Environment) -> ChartMap:
    """``x1 -> E, th1 -> E, ...``; coordinates not mentioned are left unchanged."""
    dom = env.domain
    even = [coord(dom, i) for i in range(dom.m)]
    odd = [theta(dom, a) for a in range(dom.n)]
    for part in split_top_level(text, ","):
        if not part.strip():
            continue
        lhs, sep, rhs = part.partition("->")
        if not sep:
            raise ParseError(f"expected 'coordinate -> expression' in {part.strip()!r}")
        name = lhs.strip()
        hit = dom.names.get(name)
        if hit is None or hit[0] not in ("x", "th"):
            raise ParseError(f"{name!r} is not a coordinate of the domain")
        value = parse_expr(rhs, env)
        if hit[0] == "x":
            even[hit[1]] = value
        else:
            odd[hit[1]] = value
    return ChartMap(dom, tuple(even), tuple(odd))


def split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
