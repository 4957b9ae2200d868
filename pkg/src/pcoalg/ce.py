"""Chevalley-Eilenberg cochains and integral chains of finite Lie superalgebras.

Cochains live on a :class:`SuperDomain` whose one-form generators are the
Maurer-Cartan forms: duals of even generators behave like ``dx`` (odd) and
duals of odd generators like ``dth`` (even).  Coefficients are constants.
The differential on generators is ``d c^A = -1/2 (-1)^{|B|(|C|+1)} f^A_BC c^B c^C``
(parities of the generators ``T_B``, ``T_C``) so that
``[D_al, D_be] = -2 gamma^a_{al be} P_a`` gives ``dV^a = gamma^a_{al be} psi^al psi^be``.

Integral chains ``D (x) S(Pi g)`` use the same layout with ``pi`` of even
generators odd and ``pi`` of odd generators even; the boundary is
``-1/2 (-1)^{|A|(|B|+1)} f^C_AB e_C iota_B iota_A``.  Both sign factors are
fixed by requiring d^2 = 0 and boundary^2 = 0 on algebras with mixed brackets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement, permutations, product

from .algebra import FormExpr, mono_word, wedge
from .calculus import contract_basis
from .domain import SuperDomain
from .linalg import matmul, matrix_from_columns, nullspace, rank, rational
from .models import ETA, GAMMA, gamma_lower, gamma_up_default


@dataclass(frozen=True, eq=False)
class LieSuperalgebraModel:
    """Generators (even first, then odd) and graded-antisymmetric brackets.

    ``brackets`` maps ``(A, B)`` name pairs to ``{C: coefficient}``; the
    reversed pair is filled in by graded antisymmetry.
    """

    even: tuple
    odd: tuple
    brackets: dict
    dual_names: tuple = ()
    structure: dict = field(init=False, repr=False)

    def __post_init__(self):
        names = list(self.even) + list(self.odd)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        index = {s: i for i, s in enumerate(names)}
        table = {}
        for (a, b), rhs in self.brackets.items():
            if a not in index or b not in index:
                raise ValueError(f"unknown generator in [{a},{b}]")
            A, B = index[a], index[b]
            vec = {}
            for c, v in rhs.items():
                if c not in index:
                    raise ValueError(f"unknown generator {c}")
                if v:
                    vec[index[c]] = Fraction(v)
            for C in vec:
                if self.parity(C) != (self.parity(A) + self.parity(B)) % 2:
                    raise ValueError(f"[{a},{b}] has a component of the wrong parity along {names[C]}")
            sign = -1 if not (self.parity(A) and self.parity(B)) else 1
            rev = {C: v * sign for C, v in vec.items()}
            for key, val in (((A, B), vec), ((B, A), rev)):
                if key in table and table[key] != val:
                    raise ValueError(f"brackets [{a},{b}] violate graded antisymmetry")
                table[key] = val
        object.__setattr__(self, "structure", table)
        if self.dual_names and len(self.dual_names) != len(names):
            raise ValueError("dual_names must name every generator")

    @property
    def names(self):
        return tuple(self.even) + tuple(self.odd)

    @property
    def dim(self):
        return len(self.even), len(self.odd)

    def parity(self, A: int) -> int:
        return 0 if A < len(self.even) else 1

    def f(self, A, B, C) -> Fraction:
        return self.structure.get((A, B), {}).get(C, Fraction(0))

    @cached_property
    def domain(self) -> SuperDomain:
        m, n = self.dim
        duals = self.dual_names or tuple("c_" + s for s in self.names)
        return SuperDomain(m, n, tuple(f"u{i}" for i in range(m)), tuple(f"w{i}" for i in range(n)),
                           duals[:m], duals[m:])

    @cached_property
    def chain_domain(self) -> SuperDomain:
        m, n = self.dim
        pis = tuple("pi" + s for s in self.names)
        return SuperDomain(m, n, tuple(f"u{i}" for i in range(m)), tuple(f"w{i}" for i in range(n)),
                           pis[:m], pis[m:])

    def generator(self, A: int, dom=None) -> FormExpr:
        dom = dom or self.domain
        m = self.dim[0]
        if A < m:
            return FormExpr.monomial(dom, ((), (A,), (), ()))
        return FormExpr.monomial(dom, ((), (), ((A - m, 1),), ()))

    def jacobi_violations(self) -> list:
        """Triples where the graded Jacobi identity fails."""
        N = len(self.names)

        def br(x, y):
            out = {}
            for (A, va), (B, vb) in product(x.items(), y.items()):
                for C, v in self.structure.get((A, B), {}).items():
                    out[C] = out.get(C, 0) + va * vb * v
            return {k: v for k, v in out.items() if v}

        bad = []
        for A, B, C in product(range(N), repeat=3):
            pa, pb, pc = self.parity(A), self.parity(B), self.parity(C)
            lhs = br({A: 1}, br({B: 1}, {C: 1}))
            rhs1 = br(br({A: 1}, {B: 1}), {C: 1})
            rhs2 = br({B: 1}, br({A: 1}, {C: 1}))
            s = -1 if pa * pb else 1
            total = dict(lhs)
            for k, v in rhs1.items():
                total[k] = total.get(k, 0) - v
            for k, v in rhs2.items():
                total[k] = total.get(k, 0) - s * v
            if any(total.values()):
                bad.append((self.names[A], self.names[B], self.names[C]))
        return bad


# --------------------------------------------------------------------------
# text format

_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_]\w*)\s*")


def _parse_combination(text: str, lineno: int) -> dict:
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (pos and not m.group(1)):
            raise ValueError(f"line {lineno}: cannot parse {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        out[m.group(3)] = out.get(m.group(3), 0) + sign * coeff
        pos = m.end()
    return out


def parse_structure_constants(text: str) -> LieSuperalgebraModel:
    """Parse ``even:``/``odd:``/``dual:`` headers and ``[A,B] = ...`` lines."""
    even, odd, duals, brackets = (), (), (), {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        if head.strip() in ("even", "odd", "dual") and not line.startswith("["):
            names = tuple(rest.split())
            if head.strip() == "even":
                even = names
            elif head.strip() == "odd":
                odd = names
            else:
                duals = names
            continue
        m = re.fullmatch(r"\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=\s*(.+)", line)
        if not m:
            raise ValueError(f"line {lineno}: expected '[A,B] = combination', got {raw!r}")
        brackets[(m.group(1), m.group(2))] = _parse_combination(m.group(3), lineno)
    return LieSuperalgebraModel(even, odd, brackets, duals)


def format_structure_constants(model: LieSuperalgebraModel) -> str:
    lines = ["even: " + " ".join(model.even), "odd: " + " ".join(model.odd)]
    if model.dual_names:
        lines.append("dual: " + " ".join(model.dual_names))
    for (a, b), rhs in model.brackets.items():
        parts = []
        for c, v in rhs.items():
            if v:
                parts.append(f"{'-' if v < 0 else '+'} {abs(Fraction(v))}*{c}")
        body = " ".join(parts).lstrip("+ ") if parts else "0"
        lines.append(f"[{a},{b}] = {body}")
    return "\n".join(lines) + "\n"


def d3_coset_text() -> str:
    """Structure constants of the d=3 N=1 supertranslation coset."""
    lines = ["even: P0 P1 P2", "odd: D1 D2", "dual: V0 V1 V2 psi1 psi2"]
    for al, be in combinations_with_replacement(range(2), 2):
        terms = [f"{-2 * GAMMA[a][al][be]:+d}*P{a}" for a in range(3) if GAMMA[a][al][be]]
        lines.append(f"[D{al + 1},D{be + 1}] = " + " ".join(terms))
    return "\n".join(lines) + "\n"


def d3_coset_model() -> LieSuperalgebraModel:
    return parse_structure_constants(d3_coset_text())


# --------------------------------------------------------------------------
# cochains

def mc_differential(model: LieSuperalgebraModel) -> list:
    """``d c^A`` for every generator, as constant-coefficient forms."""
    dom = model.domain
    N = len(model.names)
    gens = [model.generator(A) for A in range(N)]
    out = []
    for A in range(N):
        acc = FormExpr(dom)
        for B, C in product(range(N), repeat=2):
            v = model.f(B, C, A)
            if v:
                if model.parity(B) and not model.parity(C):
                    v = -v
                acc = acc + wedge(gens[B], gens[C]).scale(-v / 2)
        out.append(acc)
    return out


class CEComplex:
    """The CE complex of ``model`` with trivial coefficients, degree by degree."""

    def __init__(self, model: LieSuperalgebraModel, dom=None, images=None):
        self.model = model
        self.domain = dom or model.domain
        if images is None:
            bad = model.jacobi_violations()
            if bad:
                raise ValueError(f"graded Jacobi identity fails, e.g. for {bad[0]}")
            images = mc_differential(model)
        self.images = images
        self._cache = {}

    def basis(self, p: int) -> list:
        """Monomials of total degree p: exterior in odd duals, symmetric in even ones."""
        m, n = self.model.dim
        out = []
        for s in range(min(p, m) + 1):
            for S in combinations(range(m), s):
                for powers in _compositions(p - s, n):
                    dths = tuple((a, k) for a, k in enumerate(powers) if k)
                    out.append(((), S, dths, ()))
        return out

    def _gen_image(self, kind, idx):
        m = self.model.dim[0]
        return self.images[idx] if kind == "dx" else self.images[m + idx]

    def _d_mono(self, mono) -> FormExpr:
        if mono in self._cache:
            return self._cache[mono]
        dom = self.domain
        gens = mono_word(mono)
        out = FormExpr(dom)
        parity = 0
        for j, g in enumerate(gens):
            left = _word(dom, gens[:j])
            right = _word(dom, gens[j + 1:])
            piece = wedge(wedge(left, self._gen_image(*g)), right)
            out = out + (-piece if parity else piece)
            if g[0] == "dx":
                parity ^= 1
        self._cache[mono] = out
        return out

    def d(self, a: FormExpr) -> FormExpr:
        out = FormExpr(self.domain)
        for mono, c in a.terms.items():
            out = out + self._d_mono(mono).scale(c)
        return out

    def matrix(self, p: int):
        src = self.basis(p)
        dst = {mono: i for i, mono in enumerate(self.basis(p + 1))}
        cols = [{k: rational(v) for k, v in self._d_mono(mono).terms.items()} for mono in src]
        return matrix_from_columns(cols, dst)


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _word(dom, gens) -> FormExpr:
    out = FormExpr.scalar(dom, 1)
    for g in gens:
        kind, idx = g[0], g[1]
        mono = ((), (idx,), (), ()) if kind == "dx" else ((), (), ((idx, 1),), ())
        out = wedge(out, FormExpr.monomial(dom, mono))
    return out


def ce_differential_matrix(model: LieSuperalgebraModel, p: int):
    return CEComplex(model).matrix(p)


def _vector_to_form(dom, basis, vec) -> FormExpr:
    out = {}
    for mono, v in zip(basis, vec):
        if v:
            out[mono] = dom.coeff(Fraction(int(v.numerator), int(v.denominator)))
    return FormExpr(dom, out)


def _form_to_vector(basis, a: FormExpr):
    index = {mono: i for i, mono in enumerate(basis)}
    vec = [0] * len(basis)
    for mono, c in a.terms.items():
        if mono not in index:
            raise ValueError("cochain is not of the requested degree")
        vec[index[mono]] = rational(c)
    return vec


@dataclass
class CohomologyResult:
    degree: int
    dimension: int
    representatives: list


def ce_cohomology(model: LieSuperalgebraModel, p: int) -> CohomologyResult:
    """``dim ker M_p - rank M_{p-1}`` with representative cocycles."""
    cx = CEComplex(model)
    basis = cx.basis(p)
    kernel = nullspace(cx.matrix(p))
    image_cols = []
    if p > 0:
        Mprev = cx.matrix(p - 1)
        image_cols = [list(col) for col in zip(*Mprev.to_list())] if Mprev.shape[0] else []
    reps = []
    current = [c for c in image_cols]
    r = _rank_of_columns(current, len(basis))
    for vec in kernel:
        trial = current + [vec]
        r2 = _rank_of_columns(trial, len(basis))
        if r2 > r:
            current, r = trial, r2
            reps.append(_vector_to_form(cx.domain, basis, vec))
    return CohomologyResult(p, len(reps), reps)


def _rank_of_columns(cols, size) -> int:
    if not cols:
        return 0
    return rank(matrix_from_columns([{i: v for i, v in enumerate(c) if v} for c in cols],
                                    {i: i for i in range(size)}))


def is_nontrivial_class(model: LieSuperalgebraModel, p: int, cochain: FormExpr) -> bool:
    """Closed and not a coboundary."""
    cx = CEComplex(model)
    if not cx.d(cochain).iszero:
        return False
    basis = cx.basis(p)
    vec = _form_to_vector(basis, cochain)
    if p == 0:
        return any(vec)
    Mprev = cx.matrix(p - 1)
    cols = [list(col) for col in zip(*Mprev.to_list())] if Mprev.shape[0] else []
    return _rank_of_columns(cols + [vec], len(basis)) > _rank_of_columns(cols, len(basis))


def lie_derivative_ce(model: LieSuperalgebraModel, A: int, a: FormExpr, cx=None) -> FormExpr:
    """``L_A = d iota_A - (-1)^{|iota_A|} iota_A d`` on cochains."""
    cx = cx or CEComplex(model)
    m = model.dim[0]
    kind, idx = ("x", A) if A < m else ("th", A - m)
    iota = lambda e: contract_basis(cx.domain, kind, idx, e)  # noqa: E731
    first = cx.d(iota(a))
    second = iota(cx.d(a))
    return first + second if kind == "x" else first - second


def invariant_cocycles(model: LieSuperalgebraModel, p: int, generators=None) -> list:
    """Basis of ``ker d`` intersected with ``ker L_A`` for the chosen generators."""
    cx = CEComplex(model)
    basis = cx.basis(p)
    gens = range(len(model.names)) if generators is None else [model.names.index(g) for g in generators]
    rows = {}
    cols = [dict() for _ in basis]
    blocks = [("d", None)] + [("L", A) for A in gens]
    for j, mono in enumerate(basis):
        e = FormExpr.monomial(cx.domain, mono)
        for tag, A in blocks:
            img = cx.d(e) if tag == "d" else lie_derivative_ce(model, A, e, cx)
            for k, v in img.terms.items():
                key = (tag, A, k)
                rows.setdefault(key, len(rows))
                cols[j][key] = rational(v)
    M = matrix_from_columns(cols, rows)
    return [_vector_to_form(cx.domain, basis, vec) for vec in nullspace(M)]


def ce_square_is_zero(model: LieSuperalgebraModel, p: int) -> bool:
    cx = CEComplex(model)
    prod = matmul(cx.matrix(p + 1), cx.matrix(p))
    return all(not v for row in prod.to_list() for v in row)


# --------------------------------------------------------------------------
# integral chains

class IntegralChains:
    """Chains ``D (x) S^k(Pi g)``; ``k`` counts pi factors, grading ``dim_0 - k``."""

    def __init__(self, model: LieSuperalgebraModel):
        self.model = model
        self.domain = model.chain_domain
        self._cx = CEComplex(model, self.domain, images=[])

    def basis_k(self, k: int) -> list:
        return self._cx.basis(k)

    def basis(self, degree: int) -> list:
        return self.basis_k(self.model.dim[0] - degree)

    def _contract(self, A: int, a: FormExpr) -> FormExpr:
        m = self.model.dim[0]
        return contract_basis(self.domain, "x", A, a) if A < m else contract_basis(self.domain, "th", A - m, a)

    def boundary(self, a: FormExpr) -> FormExpr:
        N = len(self.model.names)
        out = FormExpr(self.domain)
        for A, B in product(range(N), repeat=2):
            row = self.model.structure.get((A, B))
            if not row:
                continue
            inner = self._contract(B, self._contract(A, a))
            if not inner.terms:
                continue
            flip = self.model.parity(A) and not self.model.parity(B)
            for C, v in row.items():
                v = -v if flip else v
                out = out + wedge(self.model.generator(C, self.domain), inner).scale(-v / 2)
        return out

    def matrix_k(self, k: int):
        src = self.basis_k(k)
        dst = {mono: i for i, mono in enumerate(self.basis_k(k - 1))}
        cols = []
        for mono in src:
            img = self.boundary(FormExpr.monomial(self.domain, mono))
            cols.append({key: rational(v) for key, v in img.terms.items()})
        return matrix_from_columns(cols, dst)

    def is_nontrivial_cycle(self, k: int, chain: FormExpr) -> bool:
        if not self.boundary(chain).iszero:
            return False
        basis = self.basis_k(k)
        vec = _form_to_vector(basis, chain)
        M = self.matrix_k(k + 1)
        cols = [list(col) for col in zip(*M.to_list())] if M.shape[0] else []
        return _rank_of_columns(cols + [vec], len(basis)) > _rank_of_columns(cols, len(basis))

    def homology_dimension(self, k: int) -> int:
        M = self.matrix_k(k)
        ker = len(self.basis_k(k)) - (rank(M) if k > 0 else 0)
        return ker - rank(self.matrix_k(k + 1))


def integral_chain_space(model: LieSuperalgebraModel, degree: int) -> list:
    """Basis monomials of ``D (x) S^{dim_0 - degree}(Pi g)`` as chain expressions."""
    chains = IntegralChains(model)
    return [FormExpr.monomial(chains.domain, mono) for mono in chains.basis(degree)]


def boundary_square_is_zero(model: LieSuperalgebraModel, k: int) -> bool:
    chains = IntegralChains(model)
    prod = matmul(chains.matrix_k(k - 1), chains.matrix_k(k))
    return all(not v for row in prod.to_list() for v in row)


# --------------------------------------------------------------------------
# d=3 fixtures

def wz_three_form(model: LieSuperalgebraModel) -> FormExpr:
    """``V^a gamma_{a al be} psi^al psi^be`` on the d=3 coset."""
    out = FormExpr(model.domain)
    for a, al, be in product(range(3), range(2), range(2)):
        g = gamma_lower(a, al, be)
        if g:
            piece = wedge(wedge(model.generator(a), model.generator(3 + al)), model.generator(3 + be))
            out = out + piece.scale(g)
    return out


def pco_chain(model: LieSuperalgebraModel, gamma_up=gamma_up_default) -> FormExpr:
    """``pi P_a pi D_al pi D_be gamma^{a al be}`` in the chain complex."""
    chains = IntegralChains(model)
    out = FormExpr(chains.domain)
    for a, al, be in product(range(3), range(2), range(2)):
        g = gamma_up(a, al, be)
        if g:
            gens = [model.generator(A, chains.domain) for A in (a, 3 + al, 3 + be)]
            out = out + wedge(wedge(gens[0], gens[1]), gens[2]).scale(g)
    return out


def fierz_residuals() -> dict:
    """``sum over orderings of gamma^a_{..} gamma_{a ..}`` for every index quadruple."""
    out = {}
    for idx in product(range(2), repeat=4):
        total = 0
        for p in permutations(idx):
            total += sum(GAMMA[a][p[0]][p[1]] * ETA[a] * GAMMA[a][p[2]][p[3]] for a in range(3))
        out[idx] = total
    return out


def chain_to_form(model: LieSuperalgebraModel, chain: FormExpr, realisation) -> FormExpr:
    """Contract ``D = V^0 V^1 V^2 delta(psi^1) delta(psi^2)`` along a chain.

    ``realisation`` is a :class:`~pcoalg.models.D3N1Model`; ``pi P_a`` acts
    as ``iota_{P_a}`` and ``pi D_al`` as ``iota_{D_al}``, the rightmost
    factor first.
    """
    from .calculus import contract

    dom = realisation.domain
    base = FormExpr.scalar(dom, 1)
    for v in realisation.V:
        base = wedge(base, v)
    for al in range(2):
        base = wedge(base, FormExpr.monomial(dom, ((), (), (), ((al, 0),))))
    fields = list(realisation.P) + list(realisation.D)
    out = FormExpr(dom)
    for mono, c in chain.terms.items():
        piece = base
        for g in reversed(mono_word(mono)):
            piece = contract(fields[g[1] if g[0] == "dx" else 3 + g[1]], piece)
        out = out + piece.scale(c)
    return out
