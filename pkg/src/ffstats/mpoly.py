"""Sparse polynomials in t and parameters A1..An, with the text grammar
used by the CLI and the on-disk formats.

Grammar (whitespace-insensitive, multiplication always explicit):

    expr   := term (('+' | '-') term)*
    term   := ['-'] factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT | '[' INT (',' INT)* ']' | 't' | 'A1'..'An' | '(' expr ')'

Integer literals reduce modulo p; bracketed vectors spell out extension
field coordinates.  Exponents must be nonnegative integer literals.  The
printer emits a canonical form (descending t-degree, then descending
parameter exponents) that parses back to the same polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import _gfp, unipoly
from .errors import (
    ArityMismatchError,
    BudgetExceededError,
    NegativeExponentError,
    NotAdmissibleError,
    PolynomialSyntaxError,
    UnknownVariableError,
)
from .field import FieldCtx
from .unipoly import UniPoly

# -- tokenizer ----------------------------------------------------------------

_SYMBOLS = set("+-*^()[],")


def _tokenize(text):
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            out.append((ch, ch, i))
            i += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    out.append(("END", None, n))
    return out


# -- term-dict arithmetic ------------------------------------------------------
# Terms map exponent tuples (e_t, e_1, ..., e_n) to nonzero encoded coefficients.


def _tadd(ctx, a, b):
    out = dict(a)
    for e, c in b.items():
        s = ctx.add(out.get(e, 0), c)
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _tneg(ctx, a):
    return {e: ctx.neg(c) for e, c in a.items()}


def _tmul(ctx, a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = ctx.add(out.get(e, 0), ctx.mul(ca, cb))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _tpow(ctx, a, e, nvars):
    out = {(0,) * (nvars + 1): 1}
    base = a
    while e:
        if e & 1:
            out = _tmul(ctx, out, base)
        e >>= 1
        if e:
            base = _tmul(ctx, base, base)
    return out


class MultiPoly:
    """Sparse polynomial in t and A1..An; immutable after construction."""

    __slots__ = ("ctx", "n", "terms", "_spec")

    def __init__(self, ctx: FieldCtx, n: int, terms):
        if n < 0:
            raise ValueError("parameter count must be >= 0")
        clean = {}
        for e, c in terms.items():
            if len(e) != n + 1:
                raise ArityMismatchError(
                    f"exponent vector {e} should have length {n + 1}"
                )
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            if c:
                clean[tuple(e)] = c
        self.ctx = ctx
        self.n = n
        self.terms = clean
        self._spec = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, ctx, n, c):
        return cls(ctx, n, {(0,) * (n + 1): c})

    @classmethod
    def variable_t(cls, ctx, n):
        return cls(ctx, n, {(1,) + (0,) * n: 1})

    @classmethod
    def parameter(cls, ctx, n, i):
        if not 1 <= i <= n:
            raise ValueError(f"parameter index {i} out of range 1..{n}")
        e = [0] * (n + 1)
        e[i] = 1
        return cls(ctx, n, {tuple(e): 1})

    @classmethod
    def from_unipoly(cls, f: UniPoly, n: int):
        """Lift a polynomial in t alone to one with n (unused) parameters."""
        terms = {}
        for i, c in enumerate(f.coeffs):
            if c:
                terms[(i,) + (0,) * n] = c
        return cls(f.ctx, n, terms)

    # -- degrees ----------------------------------------------------------------

    @property
    def deg_t(self) -> int:
        return max((e[0] for e in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def deg_params(self) -> int:
        return max((sum(e[1:]) for e in self.terms), default=0)

    # -- ring operations ---------------------------------------------------------

    def _compatible(self, other):
        if self.ctx != other.ctx or self.n != other.n:
            raise ValueError("polynomials over different contexts or arities")

    def __add__(self, other):
        self._compatible(other)
        return MultiPoly(self.ctx, self.n, _tadd(self.ctx, self.terms, other.terms))

    def __sub__(self, other):
        self._compatible(other)
        return MultiPoly(
            self.ctx, self.n, _tadd(self.ctx, self.terms, _tneg(self.ctx, other.terms))
        )

    def __neg__(self):
        return MultiPoly(self.ctx, self.n, _tneg(self.ctx, self.terms))

    def __mul__(self, other):
        self._compatible(other)
        return MultiPoly(self.ctx, self.n, _tmul(self.ctx, self.terms, other.terms))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        return MultiPoly(self.ctx, self.n, _tpow(self.ctx, self.terms, e, self.n))

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.terms == other.terms
        )

    __hash__ = None

    # -- specialization ------------------------------------------------------------

    def _prepared(self):
        # (deg_t, [(e_t, ((var_index, exp), ...), coeff), ...]) for tight loops
        if self._spec is None:
            rows = []
            for e, c in sorted(self.terms.items()):
                powers = tuple((i, x) for i, x in enumerate(e[1:]) if x)
                rows.append((e[0], powers, c))
            self._spec = (self.deg_t, rows)
        return self._spec

    def specialize_dense(self, point):
        """Coefficient list of F(t, point), trimmed; the workhorse for sweeps."""
        if len(point) != self.n:
            raise ArityMismatchError(
                f"expected {self.n} coordinates, got {len(point)}"
            )
        d, rows = self._prepared()
        ctx = self.ctx
        if ctx.is_prime_field:
            p = ctx.p
            coeffs = [0] * (d + 1)
            for e_t, powers, c in rows:
                w = c
                for i, e in powers:
                    a = point[i]
                    w = w * (a if e == 1 else pow(a, e, p)) % p
                coeffs[e_t] = (coeffs[e_t] + w) % p
        else:
            coeffs = [0] * (d + 1)
            for e_t, powers, c in rows:
                w = c
                for i, e in powers:
                    w = ctx.mul(w, ctx.pow(point[i], e))
                coeffs[e_t] = ctx.add(coeffs[e_t], w)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def specialize(self, point) -> UniPoly:
        """Substitute A_i := point[i]; the degree may drop below deg_t."""
        return UniPoly.make(self.ctx, self.specialize_dense(point))

    # -- printing ---------------------------------------------------------------

    def _render_coeff(self, c):
        ctx = self.ctx
        if ctx.k == 1:
            if c <= ctx.p // 2:
                return "+", str(c), c == 1
            return "-", str(ctx.p - c), ctx.p - c == 1
        cs = ctx.coords(c)
        if not any(cs[1:]):
            return "+", str(cs[0]), cs[0] == 1
        return "+", "[" + ",".join(map(str, cs)) + "]", False

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-e[0], tuple(-x for x in e[1:])))
        pieces = []
        for e in keys:
            sign, cs, is_one = self._render_coeff(self.terms[e])
            monos = []
            if e[0]:
                monos.append("t" if e[0] == 1 else f"t^{e[0]}")
            for i, x in enumerate(e[1:], start=1):
                if x:
                    monos.append(f"A{i}" if x == 1 else f"A{i}^{x}")
            if not monos:
                body = cs
            elif is_one:
                body = "*".join(monos)
            else:
                body = "*".join([cs] + monos)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


# -- parser --------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens, ctx, n):
        self.toks = tokens
        self.pos = 0
        self.ctx = ctx
        self.n = n

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise PolynomialSyntaxError(
                f"expected {kind!r}, found {tok[1]!r}", tok[2]
            )
        return tok

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return poly

    def expr(self):
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        acc = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            acc = acc * self.factor()
        return -acc if negate else acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] == "-":
                raise NegativeExponentError("exponent must be nonnegative", tok[2])
            if tok[0] != "INT":
                raise PolynomialSyntaxError(
                    "exponent must be an integer literal", tok[2]
                )
            self.advance()
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.advance()
        kind, val, pos = tok
        ctx, n = self.ctx, self.n
        if kind == "END":
            raise PolynomialSyntaxError("unexpected end of expression", pos)
        if kind == "INT":
            return MultiPoly.constant(ctx, n, ctx.from_int(val))
        if kind == "[":
            coords = [self.expect("INT")[1]]
            while self.peek()[0] == ",":
                self.advance()
                coords.append(self.expect("INT")[1])
            self.expect("]")
            if len(coords) != ctx.k:
                raise PolynomialSyntaxError(
                    f"coordinate vector needs {ctx.k} entries, got {len(coords)}", pos
                )
            return MultiPoly.constant(ctx, n, ctx.from_coords(coords))
        if kind == "NAME":
            if val == "t":
                return MultiPoly.variable_t(ctx, n)
            if val[0] == "A" and val[1:].isdigit():
                i = int(val[1:])
                if 1 <= i <= n:
                    return MultiPoly.parameter(ctx, n, i)
                raise UnknownVariableError(
                    f"parameter {val} outside A1..A{n}", pos
                )
            raise UnknownVariableError(f"unknown variable {val!r}", pos)
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {val!r}", pos)


def parse(expr: str, n: int, ctx: FieldCtx) -> MultiPoly:
    """Parse an expression in t, A1..An over the given field context."""
    return _Parser(_tokenize(expr), ctx, n).parse()


def infer_parameter_count(expr: str) -> int:
    """Largest A-index mentioned in the expression (0 if none)."""
    best = 0
    for kind, val, _ in _tokenize(expr):
        if kind == "NAME" and val[0] == "A" and val[1:].isdigit():
            best = max(best, int(val[1:]))
    return best


# -- specialization outcomes -----------------------------------------------------

TYPE = "type"
NON_SQUAREFREE = "non_squarefree"
DEGREE_DROP = "degree_drop"


@dataclass(frozen=True)
class SpecializationOutcome:
    """Result of classifying one specialization: either the factor-degree
    multiset of a squarefree full-degree specialization, or why there is none."""

    kind: str
    parts: tuple = None

    @property
    def is_type(self) -> bool:
        return self.kind == TYPE


def classify_specialization(F: MultiPoly, point) -> SpecializationOutcome:
    """Degree drop, repeated factors, or the factorization type at a point."""
    d = F.deg_t
    if d < 1:
        raise NotAdmissibleError("polynomial has no t term to factor")
    coeffs = F.specialize_dense(point)
    if len(coeffs) - 1 < d:
        return SpecializationOutcome(DEGREE_DROP)
    ctx = F.ctx
    if ctx.is_prime_field:
        parts = _gfp.gf_spec_type(coeffs, ctx.p)
    else:
        f = UniPoly.make(ctx, coeffs)
        parts = (
            unipoly.factorization_type(f) if unipoly.is_squarefree(f) else None
        )
    if parts is None:
        return SpecializationOutcome(NON_SQUAREFREE)
    return SpecializationOutcome(TYPE, parts)


# -- admissibility ----------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    """Degree data plus the sampled discriminant verdict.

    ``disc_nonzero`` is one-sided: True is certain, False is wrong with
    probability at most 2^-trials when the discriminant is not identically
    zero.  ``admissible`` additionally demands p > deg_t; statistics can
    still be computed without that (the comparison report flags it), but
    classification itself needs ``classifiable``.
    """

    deg_t: int
    total_degree: int
    disc_nonzero: bool
    p_gt_d: bool
    trials_used: int

    @property
    def admissible(self) -> bool:
        return self.disc_nonzero and self.p_gt_d and self.deg_t >= 1

    @property
    def classifiable(self) -> bool:
        return self.disc_nonzero and self.deg_t >= 1


def _disc_degree_bound(F: MultiPoly) -> int:
    # res_t(F, F_t) is a determinant of size < 2*deg_t with entries of
    # parameter degree <= deg_params.
    return max(0, (2 * F.deg_t - 1) * F.deg_params)


def _find_subfield_root(base: FieldCtx, ext: FieldCtx):
    if ext.q > 1 << 16:
        raise BudgetExceededError(
            f"subfield embedding scan over {ext.q} elements refused"
        )
    mod = list(base.modulus)
    for e in ext.elements():
        acc = 0
        for c in reversed(mod):
            acc = ext.add(ext.mul(acc, e), ext.from_int(c))
        if acc == 0:
            return e
    raise RuntimeError("irreducible modulus has no root in its extension")


def _lift_terms(F: MultiPoly, ext: FieldCtx):
    """Re-encode the coefficients of F inside an extension of its field."""
    base = F.ctx
    if base.k == 1:
        return dict(F.terms)  # residues < p are valid encodings everywhere
    root = _find_subfield_root(base, ext)
    powers = [1]
    for _ in range(base.k - 1):
        powers.append(ext.mul(powers[-1], root))
    out = {}
    for e, c in F.terms.items():
        cs = base.coords(c)
        img = 0
        for ci, rp in zip(cs, powers):
            img = ext.add(img, ext.mul(ext.from_int(ci), rp))
        out[e] = img
    return out


def disc_nonzero_probabilistic(F: MultiPoly, trials: int = 32, seed: int = 0):
    """Sampled check that the discriminant of F in t is not identically zero.

    Points are drawn from an extension large enough that a nonzero
    discriminant vanishes on at most half of it, so each failing trial
    halves the false-negative probability.  Returns (verdict, trials_used);
    a True verdict is exact.
    """
    d = F.deg_t
    if d < 1:
        raise ValueError("needs positive degree in t")
    base = F.ctx
    bound = _disc_degree_bound(F)
    m = 1
    while base.q**m <= 2 * bound:
        m += 1
    if m == 1:
        sctx = base
        terms = dict(F.terms)
    elif base.k == 1:
        sctx = FieldCtx(base.p, m, seed=seed + 1)
        terms = dict(F.terms)
    else:
        sctx = FieldCtx(base.p, base.k * m, seed=seed + 1)
        terms = _lift_terms(F, sctx)
    sample = MultiPoly(sctx, F.n, terms)
    rng = random.Random(seed)
    for trial in range(trials):
        point = [sctx.random_element(rng) for _ in range(F.n)]
        coeffs = sample.specialize_dense(point)
        if len(coeffs) - 1 == d:
            f = UniPoly.make(sctx, coeffs)
            if unipoly.discriminant(f) != 0:
                return True, trial + 1
    return False, trials


def admissibility(F: MultiPoly, trials: int = 32, seed: int = 0) -> AdmissibilityReport:
    d = F.deg_t
    if d < 1:
        return AdmissibilityReport(d, F.total_degree, False, F.ctx.p > d, 0)
    ok, used = disc_nonzero_probabilistic(F, trials=trials, seed=seed)
    return AdmissibilityReport(d, F.total_degree, ok, F.ctx.p > d, used)


def require_classifiable(F: MultiPoly, trials: int = 32, seed: int = 0) -> AdmissibilityReport:
    rep = admissibility(F, trials=trials, seed=seed)
    if not rep.classifiable:
        raise NotAdmissibleError(
            "polynomial has no usable specializations: "
            + ("deg_t < 1" if rep.deg_t < 1 else "discriminant in t vanishes identically")
        )
    return rep
