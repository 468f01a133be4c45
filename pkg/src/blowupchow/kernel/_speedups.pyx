# cython: language_level=3
# cython: boundscheck=False
"""Compiled twin of the pure-Python Groebner engine.

Same packed-integer algorithm and entry points as ``_pure``; the win comes
from C-typed loop control in the merge/reduce inner loops (coefficients and
packed monomials stay arbitrary-precision Python integers, so results are
bit-identical to the fallback).  Keep the two modules in sync when touching
either; the test suite cross-checks them whenever this one is importable.
"""

from math import gcd

FIELD_BITS = 16
FIELD_MAX = (1 << (FIELD_BITS - 1)) - 1


cdef class Context:
    cdef public int nvars
    cdef public tuple weights
    cdef public str order
    cdef public object guards
    cdef public object kbase
    cdef public int degshift
    cdef tuple _kshifts
    cdef tuple _pshifts

    def __init__(self, weights, order="degrevlex"):
        cdef int i
        self.nvars = len(weights)
        self.weights = tuple(weights)
        self.order = order
        self._pshifts = tuple(i * FIELD_BITS for i in range(self.nvars))
        self.degshift = self.nvars * FIELD_BITS
        guard = 1 << (FIELD_BITS - 1)
        self.guards = sum(guard << s for s in self._pshifts)
        if order == "degrevlex":
            self._kshifts = tuple((self.nvars - 1 - i) * FIELD_BITS
                                  for i in range(self.nvars))
            self.kbase = sum((1 << FIELD_BITS) - 1 << s for s in self._kshifts)
        elif order == "deglex":
            self._kshifts = tuple(i * FIELD_BITS for i in range(self.nvars))
            self.kbase = 0
        else:
            raise ValueError(f"unknown monomial order {order!r}")

    def pack(self, exps):
        cdef int i
        plain = 0
        key = 0
        deg = 0
        allmax = (1 << FIELD_BITS) - 1
        for i, e in enumerate(exps):
            if e > FIELD_MAX:
                raise ValueError(f"exponent {e} too large for packed monomials")
            plain += e << self._pshifts[self.nvars - 1 - i]
            deg += e * self.weights[i]
            if self.order == "degrevlex":
                key += (allmax - e) << self._kshifts[self.nvars - 1 - i]
            else:
                key += e << self._kshifts[self.nvars - 1 - i]
        if deg > FIELD_MAX:
            raise ValueError("total degree too large for packed monomials")
        key += deg << self.degshift
        return key, plain

    def unpack(self, plain):
        cdef int i
        mask = (1 << FIELD_BITS) - 1
        n = self.nvars
        return tuple((plain >> self._pshifts[n - 1 - i]) & mask
                     for i in range(n))

    def key_degree(self, key):
        return key >> self.degshift

    def divides(self, a_plain, b_plain):
        t = b_plain - a_plain
        return t >= 0 and not (t & self.guards)


def _pack_poly(ctx, terms, prime):
    out = []
    for exps, c in terms:
        if prime:
            c %= prime
        if c:
            key, plain = ctx.pack(exps)
            out.append((key, plain, c))
    out.sort(key=lambda t: t[0], reverse=True)
    merged = []
    for term in out:
        if merged and merged[-1][0] == term[0]:
            c = merged[-1][2] + term[2]
            if prime:
                c %= prime
            if c:
                merged[-1] = (term[0], term[1], c)
            else:
                merged.pop()
        else:
            merged.append(term)
    return merged


def _unpack_poly(ctx, terms):
    return [(ctx.unpack(plain), c) for _key, plain, c in terms]


def _content(terms):
    g = 0
    for term in terms:
        g = gcd(g, term[2])
        if g == 1:
            return 1
    return g


def _make_primitive(list terms):
    if not terms:
        return terms
    g = _content(terms)
    if terms[0][2] < 0:
        g = -g
    if g != 1:
        terms = [(k, p, c // g) for k, p, c in terms]
    return terms


def _make_monic(list terms, prime):
    if not terms:
        return terms
    lc = terms[0][2]
    if lc == 1:
        return terms
    inv = pow(lc, -1, prime)
    return [(k, p, c * inv % prime) for k, p, c in terms]


cdef list _axpy(list A, a, list B, b, uk, up, prime):
    """a*A + b*(u*B); A, B sorted descending by key (see _pure._axpy)."""
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t la = len(A), lb = len(B)
    cdef tuple ta, tb
    if prime:
        while i < la and j < lb:
            ta = <tuple>A[i]
            tb = <tuple>B[j]
            ka = ta[0]
            kb = tb[0] + uk
            if ka == kb:
                c = (a * ta[2] + b * tb[2]) % prime
                if c:
                    out.append((ka, ta[1], c))
                i += 1
                j += 1
            elif ka > kb:
                c = a * ta[2] % prime
                if c:
                    out.append((ka, ta[1], c))
                i += 1
            else:
                c = b * tb[2] % prime
                if c:
                    out.append((kb, tb[1] + up, c))
                j += 1
        while i < la:
            ta = <tuple>A[i]
            c = a * ta[2] % prime
            if c:
                out.append((ta[0], ta[1], c))
            i += 1
        while j < lb:
            tb = <tuple>B[j]
            c = b * tb[2] % prime
            if c:
                out.append((tb[0] + uk, tb[1] + up, c))
            j += 1
        return out
    while i < la and j < lb:
        ta = <tuple>A[i]
        tb = <tuple>B[j]
        ka = ta[0]
        kb = tb[0] + uk
        if ka == kb:
            c = a * ta[2] + b * tb[2]
            if c:
                out.append((ka, ta[1], c))
            i += 1
            j += 1
        elif ka > kb:
            out.append((ka, ta[1], a * ta[2]) if a != 1 else ta)
            i += 1
        else:
            out.append((kb, tb[1] + up, b * tb[2]))
            j += 1
    while i < la:
        ta = <tuple>A[i]
        out.append(ta if a == 1 else (ta[0], ta[1], a * ta[2]))
        i += 1
    while j < lb:
        tb = <tuple>B[j]
        out.append((tb[0] + uk, tb[1] + up, b * tb[2]))
        j += 1
    return out


_STRIP_BITS = 512


def _reduce(Context ctx, list p, list polys, list lmp, list lcs, prime, bint track):
    guards = ctx.guards
    cdef Py_ssize_t nred = len(polys)
    cdef Py_ssize_t start = 0, red, idx
    cdef list out = []
    cdef list work = p
    cdef list g
    cdef tuple head
    mult = 1
    while start < len(work):
        head = <tuple>work[start]
        key = head[0]
        plain = head[1]
        coeff = head[2]
        red = -1
        for idx in range(nred):
            t = plain - lmp[idx]
            if t >= 0 and not (t & guards):
                red = idx
                break
        if red < 0:
            out.append(head)
            start += 1
            continue
        g = <list>polys[red]
        up = plain - (<tuple>g[0])[1]
        uk = key - (<tuple>g[0])[0]
        if prime:
            work = _axpy(work[start:] if start else work, 1, g,
                         prime - coeff, uk, up, prime)
            start = 0
            continue
        lcg = lcs[red]
        h = gcd(coeff, lcg)
        a = lcg // h
        b = coeff // h
        if a < 0:
            a = -a
            b = -b
        work = _axpy(work[start:] if start else work, a, g, -b, uk, up, 0)
        if a != 1:
            mult *= a
            if out:
                out = [(k, pl, c * a) for k, pl, c in out]
        start = 0
        if not track and (mult.bit_length() > _STRIP_BITS):
            g0 = _content(out + work)
            if g0 > 1:
                out = [(k, pl, c // g0) for k, pl, c in out]
                work = [(k, pl, c // g0) for k, pl, c in work]
            mult = 1
    if not track:
        return _make_primitive(out), 1
    return out, mult


def _spoly(Context ctx, list f, list g, lcm_key, lcm_plain, prime):
    fk = (<tuple>f[0])[0]
    fp = (<tuple>f[0])[1]
    fc = (<tuple>f[0])[2]
    gk = (<tuple>g[0])[0]
    gp = (<tuple>g[0])[1]
    gc = (<tuple>g[0])[2]
    ufk = lcm_key - fk
    ufp = lcm_plain - fp
    ugk = lcm_key - gk
    ugp = lcm_plain - gp
    if prime:
        sf = [(k + ufk, p + ufp, c) for k, p, c in f]
        return _axpy(sf, 1, g, prime - 1, ugk, ugp, prime)
    h = gcd(fc, gc)
    a = gc // h
    b = fc // h
    sf = [(k + ufk, p + ufp, a * c) for k, p, c in f]
    return _axpy(sf, 1, g, -b, ugk, ugp, 0)


class PackedBasis:
    __slots__ = ("ctx", "prime", "polys", "lmp", "lcs")

    def __init__(self, ctx, prime, polys):
        self.ctx = ctx
        self.prime = prime
        self.polys = polys
        self.lmp = [g[0][1] for g in polys]
        self.lcs = [g[0][2] for g in polys]


def make_basis(weights, order, generators, prime):
    cdef Context ctx = Context(weights, order)

    cdef list G = []
    cdef list lme = []
    cdef list lmk = []
    cdef list lmp = []
    cdef list lcs = []
    pairs = {}

    def lcm_of(i_exps, j_exps):
        return tuple(a if a > b else b for a, b in zip(i_exps, j_exps))

    def update(f):
        m = len(G)
        fe = ctx.unpack(f[0][1])
        fk, fp = f[0][0], f[0][1]
        for (i, j), (lk, lp) in list(pairs.items()):
            if ctx.divides(fp, lp):
                li = ctx.pack(lcm_of(lme[i], fe))
                lj = ctx.pack(lcm_of(lme[j], fe))
                if li[1] != lp and lj[1] != lp:
                    del pairs[(i, j)]
        groups = {}
        for i in range(m):
            lk, lp = ctx.pack(lcm_of(lme[i], fe))
            groups.setdefault((lk, lp), []).append(i)
        minimal = []
        for (lk, lp) in sorted(groups):
            if not any(ctx.divides(mp, lp) for _mk, mp in minimal):
                minimal.append((lk, lp))
        for (lk, lp) in minimal:
            members = groups[(lk, lp)]
            if any(lmp[i] + fp == lp for i in members):
                continue
            pairs[(min(members), m)] = (lk, lp)
        G.append(f)
        lme.append(fe)
        lmk.append(fk)
        lmp.append(fp)
        lcs.append(f[0][2])

    for gen in generators:
        f = _pack_poly(ctx, gen, prime)
        if not f:
            continue
        f, _ = _reduce(ctx, f, G, lmp, lcs, prime, False)
        if not f:
            continue
        f = _make_monic(f, prime) if prime else f
        update(f)

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij][0],) + ij)
        lk, lp = pairs.pop((i, j))
        s = _spoly(ctx, G[i], G[j], lk, lp, prime)
        if not s:
            continue
        r, _ = _reduce(ctx, s, G, lmp, lcs, prime, False)
        if not r:
            continue
        r = _make_monic(r, prime) if prime else r
        update(r)

    order_idx = sorted(range(len(G)), key=lambda i: lmk[i])
    kept = []
    kept_lmp = []
    for i in order_idx:
        if not any(ctx.divides(mp, lmp[i]) for mp in kept_lmp):
            kept.append(G[i])
            kept_lmp.append(lmp[i])
    reduced = list(kept)
    for idx in range(len(reduced)):
        others = reduced[:idx] + reduced[idx + 1:]
        omp = [g[0][1] for g in others]
        ocs = [g[0][2] for g in others]
        r, _ = _reduce(ctx, reduced[idx], others, omp, ocs, prime, False)
        reduced[idx] = _make_monic(r, prime) if prime else r
    reduced.sort(key=lambda g: g[0][0])
    return PackedBasis(ctx, prime, reduced)


def basis_terms(basis):
    return [_unpack_poly(basis.ctx, g) for g in basis.polys]


def normal_form(basis, terms):
    p = _pack_poly(basis.ctx, terms, basis.prime)
    r, mult = _reduce(basis.ctx, p, basis.polys, basis.lmp, basis.lcs,
                      basis.prime, True)
    return _unpack_poly(basis.ctx, r), mult
