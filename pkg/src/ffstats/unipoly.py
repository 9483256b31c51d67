"""Univariate polynomial algebra over a field context.

A :class:`UniPoly` is an immutable coefficient vector (encoded field
elements, index = degree, no trailing zeros) tied to a :class:`FieldCtx`.
The module provides gcd, squarefreeness, the factor-degree multiset via
distinct-degree splitting, irreducibility, discriminants, and the Morse
criterion (simple critical points with pairwise distinct critical values).

Only the *degrees* of the irreducible factors are ever computed; gcds with
x^(q^i) - x group the factors by degree and nothing is split further.
Prime fields dispatch to the dense integer kernels in :mod:`ffstats._gfp`;
proper extensions run the same algorithms through context arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _gfp
from .errors import (
    MorsePreconditionError,
    NotSquarefreeError,
    ZeroPolynomialError,
)
from .field import FieldCtx

# A factorization type is the multiset of irreducible-factor degrees,
# stored as a tuple of positive ints sorted descending, e.g. (3, 2, 2, 1).
FactorizationType = tuple


def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the t^i coefficient."""

    ctx: FieldCtx
    coeffs: tuple

    @classmethod
    def make(cls, ctx, elems):
        return cls(ctx, tuple(_trim(list(elems))))

    @classmethod
    def from_ints(cls, ctx, ints):
        """Coefficients given as plain integers, embedded via the prime subfield."""
        return cls.make(ctx, [ctx.from_int(c) for c in ints])

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _same_field(self, other):
        if self.ctx != other.ctx:
            raise ValueError("polynomials over different field contexts")

    def __add__(self, other):
        self._same_field(other)
        return UniPoly.make(self.ctx, _add(self.ctx, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        self._same_field(other)
        return UniPoly.make(self.ctx, _sub(self.ctx, list(self.coeffs), list(other.coeffs)))

    def __neg__(self):
        return UniPoly.make(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._same_field(other)
        return UniPoly.make(self.ctx, _mul(self.ctx, list(self.coeffs), list(other.coeffs)))

    def __divmod__(self, other):
        self._same_field(other)
        q, r = _divmod(self.ctx, list(self.coeffs), list(other.coeffs))
        return UniPoly.make(self.ctx, q), UniPoly.make(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero or self.lc == 1:
            return self
        inv = self.ctx.inv(self.lc)
        return UniPoly(self.ctx, tuple(self.ctx.mul(c, inv) for c in self.coeffs))

    def derivative(self) -> "UniPoly":
        ctx = self.ctx
        return UniPoly.make(ctx, _diff(ctx, list(self.coeffs)))

    def evaluate(self, a: int) -> int:
        ctx = self.ctx
        y = 0
        for c in reversed(self.coeffs):
            y = ctx.add(ctx.mul(y, a), c)
        return y

    def __str__(self):
        ctx = self.ctx
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c) if ctx.k == 1 else "[" + ",".join(map(str, ctx.coords(c))) + "]"
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


# -- generic dense kernels (any field context) ------------------------------


def _add(ctx, f, g):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = ctx.add(out[i], c)
    return _trim(out)


def _sub(ctx, f, g):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = ctx.sub(out[i], c)
    return _trim(out)


def _mul(ctx, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return _trim(out)


def _divmod(ctx, f, g):
    g = _trim(list(g))
    dg = len(g) - 1
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(f))
    if len(r) - 1 < dg:
        return [], r
    q = [0] * (len(r) - dg)
    inv = ctx.inv(g[-1])
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = ctx.mul(c, inv)
            q[i - dg] = c
            for j in range(dg):
                r[i - dg + j] = ctx.sub(r[i - dg + j], ctx.mul(c, g[j]))
            r[i] = 0
    return _trim(q), _trim(r[:dg])


def _rem(ctx, f, g):
    return _divmod(ctx, f, g)[1]


def _gcd(ctx, f, g):
    a, b = _trim(list(f)), _trim(list(g))
    while b:
        a, b = b, _rem(ctx, a, b)
    if a and a[-1] != 1:
        inv = ctx.inv(a[-1])
        a = [ctx.mul(c, inv) for c in a]
    return a


def _diff(ctx, f):
    out = []
    for i in range(1, len(f)):
        c = f[i]
        # i*c inside the field: repeated addition is fine, i stays tiny,
        # but reducing i into the prime subfield first is cheaper.
        out.append(ctx.mul(ctx.from_int(i), c))
    return _trim(out)


def _pow_mod(ctx, f, e, g):
    dg = len(g) - 1
    if e == 0:
        return [1] if dg > 0 else []
    base = _rem(ctx, f, g)
    if not base:
        return []
    r = list(base)
    for bit in bin(e)[3:]:
        r = _rem(ctx, _mul(ctx, r, r), g)
        if bit == "1":
            r = _rem(ctx, _mul(ctx, r, base), g)
    return r


def _ddf_type(ctx, f):
    # f monic squarefree over GF(q); mirrors _gfp.gf_ddf_type with q = p^k.
    q = ctx.q
    parts = []
    g = f
    h = [0, 1]
    i = 0
    while True:
        dg = len(g) - 1
        if dg <= 0:
            break
        i += 1
        if 2 * i > dg:
            parts.append(dg)
            break
        h = _pow_mod(ctx, h, q, g)
        d = _gcd(ctx, _sub(ctx, h, [0, 1]), g)
        dd = len(d) - 1
        if dd > 0:
            parts.extend([i] * (dd // i))
            g = _divmod(ctx, g, d)[0]
            if len(g) - 1 > 0:
                h = _rem(ctx, h, g)
    return tuple(sorted(parts, reverse=True))


def _resultant(ctx, f, g):
    """res(f, g) by a remainder sequence tracking leading coefficients."""
    a, b = _trim(list(f)), _trim(list(g))
    if not a or not b:
        return 0
    acc = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return ctx.mul(acc, ctx.pow(b[0], m))
        r = _rem(ctx, a, b)
        if not r:
            return 0
        acc = ctx.mul(acc, ctx.pow(b[-1], m - (len(r) - 1)))
        if (m * n) % 2:
            acc = ctx.neg(acc)
        a, b = b, r


def _interpolate(ctx, xs, ys):
    # Lagrange; xs distinct.
    acc = []
    for i, xi in enumerate(xs):
        num = [1]
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = _mul(ctx, num, [ctx.neg(xj), 1])
                den = ctx.mul(den, ctx.sub(xi, xj))
        scale = ctx.mul(ys[i], ctx.inv(den))
        acc = _add(ctx, acc, [ctx.mul(c, scale) for c in num])
    return acc


# -- public operations -------------------------------------------------------


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    f._same_field(g)
    if f.is_zero and g.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    ctx = f.ctx
    if ctx.is_prime_field:
        return UniPoly.make(ctx, _gfp.gf_gcd(list(f.coeffs), list(g.coeffs), ctx.p))
    return UniPoly.make(ctx, _gcd(ctx, list(f.coeffs), list(g.coeffs)))


def is_squarefree(f: UniPoly) -> bool:
    """True iff gcd(f, f') = 1; false in particular whenever f' = 0."""
    if f.degree < 1:
        raise ZeroPolynomialError("squarefreeness needs degree >= 1")
    ctx = f.ctx
    if ctx.is_prime_field:
        fp = _gfp.gf_diff(list(f.coeffs), ctx.p)
        return bool(fp) and len(_gfp.gf_gcd(list(f.coeffs), fp, ctx.p)) == 1
    fp = _diff(ctx, list(f.coeffs))
    return bool(fp) and len(_gcd(ctx, list(f.coeffs), fp)) == 1


def factorization_type(f: UniPoly) -> FactorizationType:
    """Multiset of irreducible-factor degrees of a squarefree f, descending."""
    if f.degree < 1:
        raise ZeroPolynomialError("factorization type needs degree >= 1")
    ctx = f.ctx
    if ctx.is_prime_field:
        parts = _gfp.gf_spec_type(list(f.coeffs), ctx.p)
        if parts is None:
            raise NotSquarefreeError(f"{f} has a repeated factor")
        return parts
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} has a repeated factor")
    return _ddf_type(ctx, list(f.monic().coeffs))


def is_irreducible(f: UniPoly) -> bool:
    """Rabin's test: x^(q^d) = x mod f and, for every prime l | d,
    gcd(x^(q^(d/l)) - x, f) = 1.  Constants count as reducible."""
    d = f.degree
    if d < 1:
        return False
    ctx = f.ctx
    if ctx.is_prime_field:
        return _gfp.gf_irreducible(list(f.coeffs), ctx.p)
    if d == 1:
        return True
    fm = list(f.monic().coeffs)
    q = ctx.q
    frob = [[0, 1]]
    h = [0, 1]
    for _ in range(d):
        h = _pow_mod(ctx, h, q, fm)
        frob.append(h)
    if _trim(_sub(ctx, frob[d], [0, 1])):
        return False
    for ell in _gfp._prime_factors(d):
        if len(_gcd(ctx, _sub(ctx, frob[d // ell], [0, 1]), fm)) != 1:
            return False
    return True


def discriminant(f: UniPoly) -> int:
    """(-1)^(d(d-1)/2) * res(f, f') / lc(f); zero iff f is not squarefree
    (including the inseparable case f' = 0)."""
    d = f.degree
    if d < 1:
        raise ZeroPolynomialError("discriminant needs degree >= 1")
    ctx = f.ctx
    fp = _diff(ctx, list(f.coeffs))
    res = _resultant(ctx, list(f.coeffs), fp)
    if (d * (d - 1) // 2) % 2:
        res = ctx.neg(res)
    return ctx.mul(res, ctx.inv(f.lc))


def is_morse(f: UniPoly) -> bool:
    """True iff f' is squarefree and the critical values of f are pairwise
    distinct.

    The critical-value polynomial c(X) = res_t(f'(t), X - f(t)) is recovered
    by evaluating the resultant at deg(f') + 1 points of the field (p > deg f
    guarantees enough of them) and interpolating; the two conditions together
    are equivalent to c being squarefree alongside f'.
    """
    ctx = f.ctx
    d = f.degree
    if d < 2:
        raise ZeroPolynomialError("Morse test needs degree >= 2")
    if ctx.p <= d:
        raise MorsePreconditionError(
            f"Morse test needs p > deg f, got p={ctx.p}, deg={d}"
        )
    # p > d keeps deg f' = d - 1 >= 1 and f'' nonzero
    fp = _diff(ctx, list(f.coeffs))
    if len(_gcd(ctx, fp, _diff(ctx, fp))) != 1:
        return False
    # c(X) has degree deg(f') = d - 1; interpolate from d evaluations.
    xs = list(range(d))
    ys = [_resultant(ctx, fp, _sub(ctx, [x0], list(f.coeffs))) for x0 in xs]
    c = _interpolate(ctx, xs, ys)
    cp = _diff(ctx, c)
    if not cp:
        return len(c) - 1 == 0
    return len(_gcd(ctx, c, cp)) == 1
