"""Exact multivariate polynomials over the moduli-ring generator vocabulary.

Generators come in three families, graded by codimension:

* ``D{i}_{j}`` -- the exceptional divisor classes, one per slot pair i < j
  (degree 1);
* ``d{i}_{a}`` -- the pullback of the a-th degree-1 surface class to slot i
  (degree 1); printed and parsed as ``H{i}`` when the surface has k = 1;
* ``pt{i}`` -- the pullback of the surface point class to slot i (degree 2).

Monomial comparisons and printing use one fixed total precedence, highest
first::

    D1_2 > D1_3 > D2_3 > ... > d1_1 > d1_2 > ... > dn_k > pt1 > ... > ptn

i.e. the D block ordered by (j, i), then the surface classes by (i, a), then
the point classes by i.  Any fixed order would do; this one keeps exceptional
divisors earliest (they are the variables worth eliminating first) and makes
the printed form of the standard relations read slot-by-slot.

Coefficients are exact: arbitrary-precision integers, rationals, or integers
mod p.  There is no floating point anywhere in this package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InhomogeneousError, ParseError, RingMismatchError
from .surface import SurfaceData

__all__ = [
    "Generator",
    "Vocabulary",
    "Monomial",
    "Polynomial",
    "CoeffRing",
    "INT",
    "RAT",
    "mod_p",
    "MonomialOrder",
    "DEGREVLEX",
    "DEGLEX",
    "compare_monomials",
]


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient domain tag: exact integers, rationals, or Z/p."""

    kind: str  # 'int' | 'rat' | 'mod'
    p: int = 0

    @property
    def is_field(self) -> bool:
        return self.kind in ("rat", "mod")

    def coerce(self, value):
        if self.kind == "int":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise RingMismatchError(f"{value} is not an integer")
                return int(value)
            return int(value)
        if self.kind == "rat":
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise RingMismatchError(
                    f"denominator of {value} is not invertible mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def __str__(self) -> str:
        return {"int": "ZZ", "rat": "QQ"}.get(self.kind, f"ZZ/{self.p}")


INT = CoeffRing("int")
RAT = CoeffRing("rat")


def mod_p(p: int) -> CoeffRing:
    if p < 2:
        raise ValueError("modulus must be >= 2")
    return CoeffRing("mod", p)


# ---------------------------------------------------------------------------
# generators and vocabulary


@dataclass(frozen=True)
class Generator:
    """One named generator: kind 'D' (i<j), 'd' (slot i, basis a=j), or 'pt'."""

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind == "D":
            if not (1 <= self.i < self.j):
                raise ValueError(f"D requires 1 <= i < j, got ({self.i},{self.j})")
        elif self.kind == "d":
            if self.i < 1 or self.j < 1:
                raise ValueError("d requires slot and basis index >= 1")
        elif self.kind == "pt":
            if self.i < 1:
                raise ValueError("pt requires slot >= 1")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return 2 if self.kind == "pt" else 1

    @property
    def name(self) -> str:
        if self.kind == "D":
            return f"D{self.i}_{self.j}"
        if self.kind == "d":
            return f"d{self.i}_{self.j}"
        return f"pt{self.i}"

    def sort_key(self):
        # precedence position: lower key = higher precedence
        if self.kind == "D":
            return (0, self.j, self.i)
        if self.kind == "d":
            return (1, self.i, self.j)
        return (2, self.i, 0)

    def __str__(self) -> str:
        return self.name


class Vocabulary:
    """An ordered, fixed set of generators with their grading.

    Polynomials are only compatible when they share a vocabulary (same
    generator tuple).  ``for_moduli`` builds the full generator set of the
    n-blowup moduli ring over a given surface; ad-hoc vocabularies over any
    generator subset are allowed for small experiments and tests.
    """

    def __init__(self, generators, *, h_alias: bool = False,
                 surface: SurfaceData | None = None, n: int | None = None):
        gens = tuple(generators)
        if len({g.name for g in gens}) != len(gens):
            raise ValueError("duplicate generator names")
        if list(gens) != sorted(gens, key=Generator.sort_key):
            raise ValueError("generators must be listed in precedence order")
        self.generators = gens
        self.weights = tuple(g.degree for g in gens)
        self.nvars = len(gens)
        self.h_alias = h_alias
        self.surface = surface
        self.n = n
        self._index = {g.name: pos for pos, g in enumerate(gens)}
        if h_alias:
            for g in gens:
                if g.kind == "d" and g.j == 1:
                    self._index[f"H{g.i}"] = self._index[g.name]

    @classmethod
    def for_moduli(cls, surface: SurfaceData, n: int) -> "Vocabulary":
        if n < 0:
            raise ValueError("n must be >= 0")
        gens = [Generator("D", i, j) for j in range(2, n + 1) for i in range(1, j)]
        gens += [Generator("d", i, a) for i in range(1, n + 1)
                 for a in range(1, surface.k + 1)]
        gens += [Generator("pt", i) for i in range(1, n + 1)]
        return cls(gens, h_alias=(surface.k == 1), surface=surface, n=n)

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"Vocabulary({', '.join(g.name for g in self.generators)})"

    def position(self, gen) -> int:
        name = gen.name if isinstance(gen, Generator) else str(gen)
        if name not in self._index:
            raise KeyError(f"generator {name!r} not in vocabulary")
        return self._index[name]

    def gen_name(self, pos: int) -> str:
        g = self.generators[pos]
        if self.h_alias and g.kind == "d" and g.j == 1:
            return f"H{g.i}"
        return g.name

    def monomial_degree(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def format_monomial(self, exps) -> str:
        parts = []
        for pos, e in enumerate(exps):
            if e == 1:
                parts.append(self.gen_name(pos))
            elif e > 1:
                parts.append(f"{self.gen_name(pos)}^{e}")
        return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A graded monomial order; degree (with the codimension weights) first."""

    name: str  # 'degrevlex' | 'deglex'


DEGREVLEX = MonomialOrder("degrevlex")
DEGLEX = MonomialOrder("deglex")


def order_key(vocab: Vocabulary, exps, order: MonomialOrder = DEGREVLEX):
    """Sort key: greater monomials get greater keys."""
    deg = vocab.monomial_degree(exps)
    if order.name == "degrevlex":
        return (deg,) + tuple(-e for e in reversed(exps))
    if order.name == "deglex":
        return (deg,) + tuple(exps)
    raise ValueError(f"unknown monomial order {order.name!r}")


@dataclass(frozen=True)
class Monomial:
    """Exponent vector over a vocabulary (comparison via compare_monomials)."""

    vocab: Vocabulary
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.exps) != self.vocab.nvars:
            raise ValueError("exponent vector length does not match vocabulary")
        if any(e < 0 for e in self.exps):
            raise ValueError("negative exponent")

    @property
    def degree(self) -> int:
        return self.vocab.monomial_degree(self.exps)

    def __str__(self) -> str:
        return self.vocab.format_monomial(self.exps)


def compare_monomials(m1: Monomial, m2: Monomial,
                      order: MonomialOrder = DEGREVLEX) -> int:
    """Total, multiplication-compatible comparison: -1, 0 or +1."""
    if m1.vocab != m2.vocab:
        raise RingMismatchError("monomials over different generator sets")
    k1 = order_key(m1.vocab, m1.exps, order)
    k2 = order_key(m2.vocab, m2.exps, order)
    return (k1 > k2) - (k1 < k2)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("vocab", "ring", "_terms")

    def __init__(self, vocab: Vocabulary, ring: CoeffRing, terms=None):
        self.vocab = vocab
        self.ring = ring
        clean = {}
        if terms:
            for exps, c in (terms.items() if isinstance(terms, dict) else terms):
                c = ring.coerce(c)
                if c:
                    exps = tuple(exps)
                    if len(exps) != vocab.nvars:
                        raise ValueError("exponent vector length mismatch")
                    clean[exps] = clean.get(exps, 0) + c
        # re-normalize sums (mod-p accumulation can wrap past the modulus)
        self._terms = {}
        for m, c in clean.items():
            c = ring.coerce(c)
            if c:
                self._terms[m] = c

    # --- constructors ---

    @classmethod
    def zero(cls, vocab, ring=INT):
        return cls(vocab, ring)

    @classmethod
    def one(cls, vocab, ring=INT):
        return cls(vocab, ring, {(0,) * vocab.nvars: 1})

    @classmethod
    def constant(cls, vocab, value, ring=INT):
        return cls(vocab, ring, {(0,) * vocab.nvars: value})

    @classmethod
    def generator(cls, vocab, gen, ring=INT):
        pos = vocab.position(gen)
        exps = [0] * vocab.nvars
        exps[pos] = 1
        return cls(vocab, ring, {tuple(exps): 1})

    # --- inspection ---

    def terms(self):
        """Terms as (Monomial, coefficient), descending in degrevlex."""
        for exps in self.sorted_exponents():
            yield Monomial(self.vocab, exps), self._terms[exps]

    def exponents(self):
        return self._terms.items()

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), 0)

    def sorted_exponents(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self._terms, key=lambda e: order_key(self.vocab, e, order),
                      reverse=True)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def homogeneous_degree(self):
        """The common degree of all terms, or None if inhomogeneous (0 for 0)."""
        degs = {self.vocab.monomial_degree(e) for e in self._terms}
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def degree(self) -> int:
        """Maximum weighted degree over all terms (0 for the zero polynomial)."""
        return max((self.vocab.monomial_degree(e) for e in self._terms), default=0)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX):
        if not self._terms:
            return None
        exps = max(self._terms, key=lambda e: order_key(self.vocab, e, order))
        return Monomial(self.vocab, exps)

    # --- ring conversions ---

    def with_ring(self, ring: CoeffRing) -> "Polynomial":
        """Re-tag the coefficients (exact lift or mod-p reduction)."""
        return Polynomial(self.vocab, ring, self._terms)

    def reduce_mod(self, p: int) -> "Polynomial":
        return self.with_ring(mod_p(p))

    # --- arithmetic ---

    def _check(self, other):
        if self.vocab != other.vocab:
            raise RingMismatchError("polynomials over different generator sets")
        if self.ring != other.ring:
            raise RingMismatchError(
                f"coefficient tag mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.vocab, self.ring, out)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) - c
        return Polynomial(self.vocab, self.ring, out)

    def __neg__(self):
        return Polynomial(self.vocab, self.ring,
                          {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.vocab, self.ring,
                              {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(self.vocab, self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.vocab, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.vocab == other.vocab and self.ring == other.ring
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.vocab, self.ring, frozenset(self._terms.items())))

    # --- printing ---

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps in self.sorted_exponents():
            c = self._terms[exps]
            mono = self.vocab.format_monomial(exps)
            neg = c < 0
            c = -c if neg else c
            if mono == "1":
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# parsing (canonical text syntax)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+\d+(?:_\d+)?)|([-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected input at {text[pos:pos + 10]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens, vocab, ring):
        self.tokens = tokens
        self.pos = 0
        self.vocab = vocab
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        result = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                result = result * self.factor()
            else:
                return result

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            ekind, eval_ = self.next()
            if ekind != "num":
                raise ParseError("exponent must be an integer literal")
            return base ** eval_
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "num":
            return Polynomial.constant(self.vocab, val, self.ring)
        if kind == "name":
            try:
                pos = self.vocab.position(val)
            except KeyError as exc:
                raise ParseError(str(exc)) from exc
            exps = [0] * self.vocab.nvars
            exps[pos] = 1
            return Polynomial(self.vocab, self.ring, {tuple(exps): 1})
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val = self.next()
            if (kind, val) != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, vocab: Vocabulary,
                     ring: CoeffRing = INT) -> Polynomial:
    """Parse the canonical syntax: names, integer literals, ``+ - * ^ ( )``."""
    parser = _Parser(_tokenize(text), vocab, ring)
    result = parser.expr()
    if parser.peek()[0] != "end":
        raise ParseError(f"trailing input after polynomial in {text!r}")
    return result


def require_homogeneous(p: Polynomial, degree: int | None = None) -> int:
    """Return p's homogeneous degree, raising if inhomogeneous or wrong."""
    d = p.homogeneous_degree()
    if d is None:
        raise InhomogeneousError(f"polynomial is not homogeneous: {p}")
    if degree is not None and p and d != degree:
        raise InhomogeneousError(f"expected degree {degree}, got {d}")
    return d
