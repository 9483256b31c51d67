"""Dense univariate polynomial kernels over GF(p), p prime.

Polynomials are plain lists of integer residues, index = degree, with no
trailing zeros; ``[]`` is the zero polynomial.  These functions sit on the
hot path of specialization sweeps (one distinct-degree pass per sample
point), so they avoid classes and keep the inner loops allocation-light.
Callers are expected to pass residues already reduced into [0, p).
"""


def gf_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_sub(f, g, p):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return gf_trim(out)


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return gf_trim([c % p for c in out])


def gf_monic(f, p):
    f = gf_trim(list(f))
    if not f or f[-1] == 1:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def gf_divmod(f, g, p):
    dg = len(g) - 1
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    if len(r) - 1 < dg:
        return [], gf_trim(r)
    q = [0] * (len(r) - dg)
    inv = pow(g[-1], p - 2, p)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = c * inv % p
            q[i - dg] = c
            for j in range(dg):
                r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p
            r[i] = 0
    return gf_trim(q), gf_trim(r[:dg])


def gf_rem(f, g, p):
    return gf_divmod(f, g, p)[1]


def gf_quo(f, g, p):
    return gf_divmod(f, g, p)[0]


def gf_gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, gf_rem(a, b, p)
    return gf_monic(a, p)


def gf_diff(f, p):
    return gf_trim([i * c % p for i, c in enumerate(f)][1:])


def gf_eval(f, x, p):
    y = 0
    for c in reversed(f):
        y = (y * x + c) % p
    return y


def _mulrem(u, v, g, dg, p):
    # u*v mod monic g; inputs deg < dg, output a length-<=dg list that may
    # carry trailing zeros (fine for repeated use inside gf_pow_mod).
    m = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                m[i + j] += a * b
    m = [c % p for c in m]
    for i in range(len(m) - 1, dg - 1, -1):
        c = m[i]
        if c:
            off = i - dg
            for j in range(dg):
                m[off + j] = (m[off + j] - c * g[j]) % p
    del m[dg:]
    return m


def gf_pow_mod(f, e, g, p):
    """f**e mod g, with g monic of degree >= 1."""
    dg = len(g) - 1
    if e == 0:
        return [1] if dg > 0 else []
    base = gf_rem(f, g, p)
    if not base:
        return []
    r = list(base)
    for bit in bin(e)[3:]:
        r = _mulrem(r, r, g, dg, p)
        if bit == "1":
            r = _mulrem(r, base, g, dg, p)
    return gf_trim(r)


def gf_ddf_type(f, p):
    """Multiset of irreducible-factor degrees of a monic squarefree f.

    Distinct-degree splitting only: stage i collects gcd(g, x^(p^i) - x),
    whose degree is i times the number of degree-i factors.  The factors
    themselves are never separated.  Returns a descending tuple.
    """
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
        h = gf_pow_mod(h, p, g, p)
        d = gf_gcd(gf_sub(h, [0, 1], p), g, p)
        dd = len(d) - 1
        if dd > 0:
            parts.extend([i] * (dd // i))
            g = gf_quo(g, d, p)
            if len(g) - 1 > 0:
                h = gf_rem(h, g, p)
    return tuple(sorted(parts, reverse=True))


def gf_spec_type(f, p):
    """Factor-degree multiset of f (descending tuple), or None when f has a
    repeated factor.  f must have degree >= 1 and a nonzero leading term."""
    if f[-1] != 1:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    if len(f) == 2:
        return (1,)
    fp = gf_diff(f, p)
    if not fp or len(gf_gcd(f, fp, p)) != 1:
        return None
    return gf_ddf_type(f, p)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def gf_irreducible(f, p):
    """Deterministic irreducibility test over GF(p): x^(p^d) = x mod f and
    gcd(x^(p^(d/l)) - x, f) = 1 for every prime l dividing d."""
    f = gf_monic(f, p)
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    frob = [[0, 1]]
    h = [0, 1]
    for _ in range(d):
        h = gf_pow_mod(h, p, f, p)
        frob.append(h)
    if gf_sub(frob[d], [0, 1], p):
        return False
    for ell in _prime_factors(d):
        if len(gf_gcd(gf_sub(frob[d // ell], [0, 1], p), f, p)) != 1:
            return False
    return True
