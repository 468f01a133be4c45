"""Presented Chow rings of iterated-blowup moduli spaces.

For a surface lattice ``s`` and ``n`` ordered blowups, the ring is generated
by the slot classes ``d{i}_{a}``, ``pt{i}`` (one surface copy per slot) and
one exceptional class ``D{i}_{j}`` per slot pair.  The ideal combines three
families:

* per-slot surface relations  ``d_a d_b = M[a][b] pt``, ``pt d_a = pt^2 = 0``;
* kernel relations tying slot j to slot i on ``D{i}_{j}``: equal d-classes,
  equal pt-classes, and equal earlier exceptionals;
* one quadratic relation per pair, ``P(-D)`` with ``P(T) = T^2 + c1 T + c0``,
  where ``c0`` lifts the class of the blowup center (a diagonal, by Kunneth)
  and ``c1`` lifts the first Chern class of its normal bundle.

The explicit lifts used here::

    c1 = - sum_a K[a] d{j}_a  -  sum_{m<i} D{m}_{j}
    c0 = kappa_{i,j}          -  sum_{m<i} D{m}_{i} D{m}_{j}
    kappa_{i,j} = pt{i} + pt{j} + sum_{a,b} Minv[a][b] d{i}_a d{j}_b

Their restriction to the center matches the required Chern data because the
center's fiber is the surface blown up at the i-1 earlier points: its
anticanonical class is ``-K`` minus the earlier exceptionals, and its diagonal
class extends kappa by ``-E_m x E_m`` terms (the blown-up lattice adds
orthogonal (-1)-classes).  Correctness is not taken on faith: the degree
golden values, Hilbert/point-count agreement, and the mod-p grid all pin it.

Betti tables come from four routes: Groebner standard monomials, the product
formula ``prod_i (q^2 + (k+i) q + 1)``, the two-step recursion
``b[n+1][j] = b[n][j] + (n+k) b[n][j-1] + b[n][j-2]``, and per-degree linear
algebra.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import InhomogeneousError, PresentationError
from .groebner import (GroebnerBasis, buchberger, hilbert_function,
                       hilbert_linear_algebra)
from .groebner import normal_form as gb_normal_form
from .poly import (INT, RAT, CoeffRing, Generator, Polynomial, Vocabulary,
                   mod_p, require_homogeneous)
from .surface import SurfaceData

__all__ = [
    "PresentedRing",
    "BettiTable",
    "kunneth_diagonal",
    "keel_polynomial",
    "build_presentation",
    "betti_product",
    "betti_recursion",
    "betti_groebner",
    "betti_linear_algebra",
    "degree",
]


def _gen(vocab, ring, *args):
    return Polynomial.generator(vocab, Generator(*args), ring)


def kunneth_diagonal(s: SurfaceData, i: int, j: int,
                     n: int | None = None) -> Polynomial:
    """Diagonal class of the (i,j) slot pair, expanded by the inverse pairing.

    Integer coefficients are guaranteed by unimodularity of M.  Symmetric in
    the roles of i and j since M (hence its inverse) is symmetric.
    """
    if not (1 <= i < j):
        raise ValueError("need 1 <= i < j")
    n = j if n is None else n
    if n < j:
        raise ValueError("n must be at least j")
    vocab = Vocabulary.for_moduli(s, n)
    minv = s.M_inverse()
    out = _gen(vocab, INT, "pt", i) + _gen(vocab, INT, "pt", j)
    for a in range(1, s.k + 1):
        for b in range(1, s.k + 1):
            c = minv[a - 1][b - 1]
            if c:
                out = out + _gen(vocab, INT, "d", i, a) * _gen(vocab, INT, "d", j, b) * c
    return out


def keel_polynomial(s: SurfaceData, n: int, i: int, j: int):
    """Lifted coefficients (c1, c0) of the pair's quadratic relation P(T)."""
    if not (1 <= i < j <= n):
        raise ValueError("need 1 <= i < j <= n")
    vocab = Vocabulary.for_moduli(s, n)
    c1 = Polynomial.zero(vocab, INT)
    for a in range(1, s.k + 1):
        if s.K[a - 1]:
            c1 = c1 - _gen(vocab, INT, "d", j, a) * s.K[a - 1]
    for m in range(1, i):
        c1 = c1 - _gen(vocab, INT, "D", m, j)
    c0 = kunneth_diagonal(s, i, j, n)
    for m in range(1, i):
        c0 = c0 - _gen(vocab, INT, "D", m, i) * _gen(vocab, INT, "D", m, j)
    return c1, c0


class PresentedRing:
    """Generators and relation ideal of the n-blowup moduli ring.

    Groebner bases (one per coefficient field) and the top-degree
    normalization are computed lazily and cached; the cache is guarded by a
    lock so concurrent readers trigger at most one computation per field.
    """

    def __init__(self, surface: SurfaceData, n: int, vocab: Vocabulary, ideal):
        self.surface = surface
        self.n = n
        self.vocab = vocab
        self.generators = vocab.generators
        self.ideal = tuple(ideal)
        self._gb_cache: dict[CoeffRing, GroebnerBasis] = {}
        self._lock = threading.Lock()
        self._top_nf = None

    @property
    def top_degree(self) -> int:
        return 2 * self.n

    def groebner_basis(self, ring: CoeffRing = RAT) -> GroebnerBasis:
        # computed under the lock: concurrent readers trigger at most one
        # basis computation per field tag
        with self._lock:
            gb = self._gb_cache.get(ring)
            if gb is None:
                lifted = [g.with_ring(ring) for g in self.ideal]
                gb = buchberger(lifted, vocab=self.vocab, ring=ring)
                self._gb_cache[ring] = gb
            return gb

    def normal_form(self, p: Polynomial, ring: CoeffRing = RAT) -> Polynomial:
        return gb_normal_form(p, self.groebner_basis(ring))

    def hilbert(self, ring: CoeffRing = RAT, max_degree: int | None = None):
        if max_degree is None:
            max_degree = self.top_degree
        return hilbert_function(self.groebner_basis(ring), max_degree)

    def point_product(self) -> Polynomial:
        out = Polynomial.one(self.vocab, INT)
        for i in range(1, self.n + 1):
            out = out * _gen(self.vocab, INT, "pt", i)
        return out

    def top_normal_form(self) -> Polynomial:
        """NF of pt1...ptn, the normalization of the degree map (cached)."""
        if self._top_nf is None:
            gb = self.groebner_basis(RAT)
            nf = gb_normal_form(self.point_product().with_ring(RAT), gb)
            if self.n > 0:
                if nf.is_zero():
                    raise PresentationError(
                        "pt1...ptn vanishes in the quotient; presentation is broken")
                if self.hilbert(RAT).rank(self.top_degree) != 1:
                    raise PresentationError(
                        f"top degree {self.top_degree} does not have rank 1")
            self._top_nf = nf
        return self._top_nf

    def relation_lines(self):
        """The ideal, one canonical-syntax line per relation (stable order)."""
        return [str(g) for g in self.ideal]

    def __repr__(self):
        return (f"PresentedRing({self.surface.name}, n={self.n}, "
                f"{len(self.generators)} generators, {len(self.ideal)} relations)")


def build_presentation(s: SurfaceData, n: int) -> PresentedRing:
    """Assemble the relation ideal in its documented deterministic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    vocab = Vocabulary.for_moduli(s, n)
    ideal = []
    for i in range(1, n + 1):
        pt_i = _gen(vocab, INT, "pt", i)
        for a in range(1, s.k + 1):
            for b in range(a, s.k + 1):
                rel = _gen(vocab, INT, "d", i, a) * _gen(vocab, INT, "d", i, b) \
                    - pt_i * s.M[a - 1][b - 1]
                ideal.append(rel)
        for a in range(1, s.k + 1):
            ideal.append(pt_i * _gen(vocab, INT, "d", i, a))
        ideal.append(pt_i * pt_i)
    for (i, j) in sorted(((i, j) for j in range(2, n + 1) for i in range(1, j)),
                         key=lambda ij: (ij[1], ij[0])):
        D = _gen(vocab, INT, "D", i, j)
        for a in range(1, s.k + 1):
            ideal.append(D * (_gen(vocab, INT, "d", i, a) - _gen(vocab, INT, "d", j, a)))
        ideal.append(D * (_gen(vocab, INT, "pt", i) - _gen(vocab, INT, "pt", j)))
        for m in range(1, i):
            ideal.append(D * (_gen(vocab, INT, "D", m, i) - _gen(vocab, INT, "D", m, j)))
        c1, c0 = keel_polynomial(s, n, i, j)
        ideal.append(D * D - c1 * D + c0)
    return PresentedRing(s, n, vocab, ideal)


# ---------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True)
class BettiTable:
    """Graded ranks b_0..b_{2n} with the method that produced them."""

    n: int
    ranks: tuple[int, ...]
    method: str

    def __post_init__(self):
        if len(self.ranks) != 2 * self.n + 1:
            raise ValueError("a Betti table has exactly 2n+1 entries")

    def total(self) -> int:
        return sum(self.ranks)

    def is_palindromic(self) -> bool:
        return self.ranks == tuple(reversed(self.ranks))

    def __iter__(self):
        return iter(self.ranks)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def betti_product(s: SurfaceData, n: int) -> BettiTable:
    """Coefficients of prod_{i=0}^{n-1} (q^2 + (k+i) q + 1)."""
    coeffs = [1]
    for i in range(n):
        coeffs = _poly_mul(coeffs, [1, s.k + i, 1])
    return BettiTable(n, tuple(coeffs), "product")


def betti_recursion(s: SurfaceData, n: int) -> BettiTable:
    """Betti table grown from (1) by b'[j] = b[j] + (m+k) b[j-1] + b[j-2]."""
    b = [1]
    for m in range(n):
        nxt = []
        for j in range(2 * (m + 1) + 1):
            v = b[j] if j < len(b) else 0
            v += (m + s.k) * (b[j - 1] if 0 <= j - 1 < len(b) else 0)
            v += b[j - 2] if 0 <= j - 2 < len(b) else 0
            nxt.append(v)
        b = nxt
    return BettiTable(n, tuple(b), "recursion")


def betti_groebner(ring: PresentedRing, coeff: CoeffRing = RAT) -> BettiTable:
    hf = ring.hilbert(coeff)
    return BettiTable(ring.n, tuple(hf.rank(d) for d in range(ring.top_degree + 1)),
                      "groebner")


def betti_linear_algebra(ring: PresentedRing, coeff: CoeffRing = RAT,
                         max_cells: int | None = None) -> BettiTable:
    gens = [g.with_ring(coeff) for g in ring.ideal]
    kwargs = {} if max_cells is None else {"max_cells": max_cells}
    ranks = []
    for d in range(ring.top_degree + 1):
        if d == 0:
            ranks.append(1)
        elif not gens:
            from .groebner import _monomials_of_degree
            ranks.append(len(_monomials_of_degree(ring.vocab.nvars,
                                                  ring.vocab.weights, d)))
        else:
            ranks.append(hilbert_linear_algebra(gens, d, **kwargs))
    return BettiTable(ring.n, tuple(ranks), "linear-algebra")


# ---------------------------------------------------------------------------
# the degree map


def degree(ring: PresentedRing, p: Polynomial):
    """Degree of a top-codimension class, normalized by deg(pt1...ptn) = 1.

    Returns an int for integer-tagged input, a Fraction otherwise.
    """
    if p.vocab != ring.vocab:
        raise InhomogeneousError("polynomial over a different generator set")
    if ring.n == 0:
        c = p.coefficient((0,) * ring.vocab.nvars)
        if len(p) > (1 if c else 0):
            raise InhomogeneousError("degree input must be a constant when n = 0")
        return int(c) if p.ring == INT else Fraction(c)
    require_homogeneous(p, ring.top_degree)
    top = ring.top_normal_form()
    nf = ring.normal_form(p.with_ring(RAT))
    if nf.is_zero():
        return 0 if p.ring == INT else Fraction(0)
    lead_top = top.sorted_exponents()[0]
    c = Fraction(nf.coefficient(lead_top)) / Fraction(top.coefficient(lead_top))
    if nf != top * c:
        raise PresentationError(
            "top piece is not one-dimensional: NF(p) not proportional to NF(pt1...ptn)")
    if p.ring == INT:
        if c.denominator != 1:
            raise PresentationError(f"integral class with non-integer degree {c}")
        return int(c)
    return c
