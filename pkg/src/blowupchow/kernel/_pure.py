"""Pure-Python Groebner engine on packed-integer monomials.

Monomials are packed into single Python integers, 16 bits per exponent, so
that the hot operations become machine-level big-int ops:

* multiply            -> integer add
* divisibility        -> subtract + guard-bit mask test
* order comparison    -> integer compare of a precomputed sort key

The sort key packs the weighted degree in the top field followed by the
order-specific tie-break fields, so ``key(a) < key(b)`` iff ``a < b`` in the
configured graded order.  Keys are multiplicative up to the constant
``kbase``: ``key(ab) = key(a) + key(b) - kbase``.

Coefficients are exact: plain Python integers.  ``prime = 0`` selects
fraction-free arithmetic over the integers (representing rational input after
denominator clearing; polynomials are kept primitive), ``prime = p`` selects
arithmetic in Z/p with monic normalization.

The compiled twin in ``_speedups.pyx`` implements the same algorithm with the
same entry points; ``kernel/__init__`` picks one at import time.
"""

from __future__ import annotations

from math import gcd

FIELD_BITS = 16
FIELD_MAX = (1 << (FIELD_BITS - 1)) - 1  # guard bit must stay clear


class Context:
    """Packing parameters for a fixed variable count, grading and order."""

    __slots__ = ("nvars", "weights", "order", "guards", "kbase", "degshift",
                 "_kshifts", "_pshifts")

    def __init__(self, weights, order="degrevlex"):
        self.nvars = len(weights)
        self.weights = tuple(weights)
        self.order = order
        self._pshifts = tuple(i * FIELD_BITS for i in range(self.nvars))
        self.degshift = self.nvars * FIELD_BITS
        guard = 1 << (FIELD_BITS - 1)
        self.guards = sum(guard << s for s in self._pshifts)
        if order == "degrevlex":
            # key fields below the degree: -(e of least-precedence var) first
            self._kshifts = tuple((self.nvars - 1 - i) * FIELD_BITS
                                  for i in range(self.nvars))
            self.kbase = sum((1 << FIELD_BITS) - 1 << s for s in self._kshifts)
        elif order == "deglex":
            self._kshifts = tuple(i * FIELD_BITS for i in range(self.nvars))
            self.kbase = 0
        else:
            raise ValueError(f"unknown monomial order {order!r}")

    def pack(self, exps):
        """Return (key, plain) for an exponent tuple."""
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
    """Pack boundary terms [(exps, coeff)] into a sorted internal list."""
    out = []
    for exps, c in terms:
        if prime:
            c %= prime
        if c:
            key, plain = ctx.pack(exps)
            out.append((key, plain, c))
    out.sort(key=lambda t: t[0], reverse=True)
    # merge duplicate monomials (boundary lists may not be collected)
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
    for _k, _p, c in terms:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _make_primitive(terms):
    """Divide by the content and normalize the leading coefficient positive."""
    if not terms:
        return terms
    g = _content(terms)
    if terms[0][2] < 0:
        g = -g
    if g != 1:
        terms = [(k, p, c // g) for k, p, c in terms]
    return terms


def _make_monic(terms, prime):
    if not terms:
        return terms
    lc = terms[0][2]
    if lc == 1:
        return terms
    inv = pow(lc, -1, prime)
    return [(k, p, c * inv % prime) for k, p, c in terms]


def _axpy(A, a, B, b, uk, up, prime):
    """Return a*A + b*(u*B) where u is the monomial shift (uk, up).

    A and B are term lists sorted descending by key; uk already includes the
    -kbase adjustment so that a shifted key is ``term_key + uk``.
    """
    out = []
    i = j = 0
    la = len(A)
    lb = len(B)
    if prime:
        while i < la and j < lb:
            ka = A[i][0]
            kb = B[j][0] + uk
            if ka == kb:
                c = (a * A[i][2] + b * B[j][2]) % prime
                if c:
                    out.append((ka, A[i][1], c))
                i += 1
                j += 1
            elif ka > kb:
                c = a * A[i][2] % prime
                if c:
                    out.append((ka, A[i][1], c))
                i += 1
            else:
                c = b * B[j][2] % prime
                if c:
                    out.append((kb, B[j][1] + up, c))
                j += 1
        while i < la:
            c = a * A[i][2] % prime
            if c:
                out.append((A[i][0], A[i][1], c))
            i += 1
        while j < lb:
            c = b * B[j][2] % prime
            if c:
                out.append((B[j][0] + uk, B[j][1] + up, c))
            j += 1
        return out
    while i < la and j < lb:
        ka = A[i][0]
        kb = B[j][0] + uk
        if ka == kb:
            c = a * A[i][2] + b * B[j][2]
            if c:
                out.append((ka, A[i][1], c))
            i += 1
            j += 1
        elif ka > kb:
            out.append((ka, A[i][1], a * A[i][2]) if a != 1 else A[i])
            i += 1
        else:
            out.append((kb, B[j][1] + up, b * B[j][2]))
            j += 1
    if i < la:
        if a == 1:
            out.extend(A[i:])
        else:
            out.extend((k, p, a * c) for k, p, c in A[i:])
    while j < lb:
        out.append((B[j][0] + uk, B[j][1] + up, b * B[j][2]))
        j += 1
    return out


_STRIP_BITS = 512  # strip content when untracked coefficients grow past this


def _reduce(ctx, p, polys, lmp, lcs, prime, track):
    """Full normal form of term list ``p`` against the reducers.

    Returns ``(remainder, mult)``: over Z/p ``mult`` is 1; over the integers
    the exact identity is ``mult * p == remainder  (mod ideal)`` when
    ``track`` is true.  Untracked integer reduction returns a primitive
    remainder (correct up to a positive scalar), stripping content as it goes
    to contain coefficient growth.
    """
    guards = ctx.guards
    nred = len(polys)
    out = []
    mult = 1
    work = p
    start = 0
    while start < len(work):
        key, plain, coeff = work[start]
        red = -1
        for idx in range(nred):
            t = plain - lmp[idx]
            if t >= 0 and not (t & guards):
                red = idx
                break
        if red < 0:
            out.append(work[start])
            start += 1
            continue
        g = polys[red]
        up = plain - g[0][1]
        # key(u) - kbase, so a shifted term key is term_key + uk exactly
        uk = key - g[0][0]
        if prime:
            # reducers are monic: subtract coeff * u * g
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


def _spoly(ctx, f, g, lcm_key, lcm_plain, prime):
    fk, fp, fc = f[0]
    gk, gp, gc = g[0]
    # shift adjustments pre-subtract kbase (see _axpy)
    ufk = lcm_key - fk
    ufp = lcm_plain - fp
    ugk = lcm_key - gk
    ugp = lcm_plain - gp
    if prime:
        # both monic
        sf = [(k + ufk, p + ufp, c) for k, p, c in f]
        return _axpy(sf, 1, g, prime - 1, ugk, ugp, prime)
    h = gcd(fc, gc)
    a = gc // h
    b = fc // h
    sf = [(k + ufk, p + ufp, a * c) for k, p, c in f]
    return _axpy(sf, 1, g, -b, ugk, ugp, 0)


class PackedBasis:
    """A reduced Groebner basis in packed form, ready for normal forms."""

    __slots__ = ("ctx", "prime", "polys", "lmp", "lcs")

    def __init__(self, ctx, prime, polys):
        self.ctx = ctx
        self.prime = prime
        self.polys = polys
        self.lmp = [g[0][1] for g in polys]
        self.lcs = [g[0][2] for g in polys]


def make_basis(weights, order, generators, prime):
    """Run Buchberger on integer term lists; return a reduced PackedBasis.

    ``generators``: list of [(exps, coeff)] with integer coefficients (clear
    rational denominators upstream).  ``prime = 0`` means rational semantics
    via fraction-free integer arithmetic.
    """
    ctx = Context(weights, order)
    kbase = ctx.kbase

    G = []       # packed polys, normalized
    lme = []     # leading exponent tuples (for lcm computation)
    lmk = []
    lmp = []
    lcs = []
    pairs = {}   # (i, j) -> (lcm_key, lcm_plain)

    def lcm_of(i_exps, j_exps):
        return tuple(a if a > b else b for a, b in zip(i_exps, j_exps))

    def update(f):
        """Gebauer-Moeller pair update, then append f to the basis."""
        m = len(G)
        fe = ctx.unpack(f[0][1])
        fk, fp = f[0][0], f[0][1]
        # drop old pairs strictly superseded by f (chain criterion)
        for (i, j), (lk, lp) in list(pairs.items()):
            if ctx.divides(fp, lp):
                li = ctx.pack(lcm_of(lme[i], fe))
                lj = ctx.pack(lcm_of(lme[j], fe))
                if li[1] != lp and lj[1] != lp:
                    del pairs[(i, j)]
        # group candidate new pairs by their lcm
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
            # Buchberger's coprime criterion: lcm equals the product
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
        f, _ = _reduce(ctx, f, G, lmp, lcs, prime, track=False)
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
        r, _ = _reduce(ctx, s, G, lmp, lcs, prime, track=False)
        if not r:
            continue
        r = _make_monic(r, prime) if prime else r
        update(r)

    # minimalize: keep only elements whose LM is not divisible by another LM
    order_idx = sorted(range(len(G)), key=lambda i: lmk[i])
    kept = []
    kept_lmp = []
    for i in order_idx:
        if not any(ctx.divides(mp, lmp[i]) for mp in kept_lmp):
            kept.append(G[i])
            kept_lmp.append(lmp[i])
    # interreduce tails for the unique reduced basis
    reduced = list(kept)
    for idx in range(len(reduced)):
        others = reduced[:idx] + reduced[idx + 1:]
        omp = [g[0][1] for g in others]
        ocs = [g[0][2] for g in others]
        r, _ = _reduce(ctx, reduced[idx], others, omp, ocs, prime, track=False)
        reduced[idx] = _make_monic(r, prime) if prime else r
    reduced.sort(key=lambda g: g[0][0])
    return PackedBasis(ctx, prime, reduced)


def basis_terms(basis):
    """Boundary form of the basis: list of [(exps, coeff)], ascending LM."""
    return [_unpack_poly(basis.ctx, g) for g in basis.polys]


def normal_form(basis, terms):
    """Normal form of boundary terms against the basis.

    Returns ``(terms, mult)`` with integer coefficients; the exact normal
    form is ``terms / mult`` (``mult`` is 1 over Z/p).
    """
    p = _pack_poly(basis.ctx, terms, basis.prime)
    r, mult = _reduce(basis.ctx, p, basis.polys, basis.lmp, basis.lcs,
                      basis.prime, track=True)
    return _unpack_poly(basis.ctx, r), mult
