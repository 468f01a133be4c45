"""Lattice data for the base surface.

A rational surface enters every computation only through the finite data of
its degree-1 intersection lattice: the rank ``k``, the symmetric unimodular
pairing matrix ``M`` (``d_a . d_b = M[a][b] [pt]``), and the canonical class
``K`` written in the same basis.  The Euler number is pinned to ``k + 2``
(ranks 1, k, 1 in degrees 0, 1, 2).

Presets cover the minimal rational surfaces and their blowups; anything else
can be loaded from a small line-oriented text file and is flagged
``experimental`` because correctness of the presented ring is only certified
for the preset families.

File format (one keyword per line, ``#`` starts a comment)::

    name my-surface
    k 2
    M 0 1
    M 1 0
    K -2 -2

``M`` appears exactly ``k`` times, one row per line, in order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import SurfaceError

__all__ = [
    "SurfaceData",
    "load_surface",
    "parse_surface_file",
    "serialize_surface",
    "r_polynomial",
    "blowup_of",
    "p2",
    "p1xp1",
    "hirzebruch",
    "PRESETS",
]


@dataclass(frozen=True)
class SurfaceData:
    """Validated lattice presentation of the degree-1 part of a surface."""

    name: str
    k: int
    M: tuple[tuple[int, ...], ...]
    K: tuple[int, ...]
    experimental: bool = False

    @property
    def euler(self) -> int:
        return self.k + 2

    def pair(self, u, v) -> int:
        """Intersection number of two degree-1 classes in the d-basis."""
        return sum(u[a] * self.M[a][b] * v[b] for a in range(self.k) for b in range(self.k))

    def M_inverse(self) -> tuple[tuple[int, ...], ...]:
        """Exact integer inverse of M (exists because M is unimodular)."""
        inv = _invert_exact(self.M)
        rows = []
        for row in inv:
            if any(c.denominator != 1 for c in row):
                raise SurfaceError("intersection matrix is not unimodular")
            rows.append(tuple(int(c) for c in row))
        return tuple(rows)


def _det_exact(M) -> Fraction:
    """Determinant by fraction-free Gaussian elimination."""
    k = len(M)
    rows = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, k):
            factor = rows[r][col] / rows[col][col]
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def _invert_exact(M):
    k = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(M)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if pivot is None:
            raise SurfaceError("intersection matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _validate(s: SurfaceData) -> SurfaceData:
    if s.k < 1:
        raise SurfaceError(f"rank k must be positive, got {s.k}")
    if len(s.M) != s.k or any(len(row) != s.k for row in s.M):
        raise SurfaceError(f"M must be {s.k}x{s.k}")
    if len(s.K) != s.k:
        raise SurfaceError(f"K must have length {s.k}")
    for a in range(s.k):
        for b in range(s.k):
            if s.M[a][b] != s.M[b][a]:
                raise SurfaceError("intersection matrix is not symmetric")
    det = _det_exact(s.M)
    if det not in (1, -1):
        raise SurfaceError(f"intersection matrix must be unimodular, det = {det}")
    return s


def _make(name, k, M, K, experimental=False) -> SurfaceData:
    return _validate(SurfaceData(
        name=name,
        k=k,
        M=tuple(tuple(int(x) for x in row) for row in M),
        K=tuple(int(x) for x in K),
        experimental=experimental,
    ))


def p2() -> SurfaceData:
    """The projective plane: one hyperplane class H with H.H = pt, K = -3H."""
    return _make("p2", 1, [[1]], [-3])


def p1xp1() -> SurfaceData:
    """Quadric surface: two rulings with pairing [[0,1],[1,0]], K = (-2,-2)."""
    return _make("p1xp1", 2, [[0, 1], [1, 0]], [-2, -2])


def hirzebruch(a: int) -> SurfaceData:
    """The ruled surface F_a in the basis (section C with C^2 = -a, fiber f)."""
    if a < 0:
        raise SurfaceError("hirzebruch parameter must be >= 0")
    return _make(f"fa:{a}", 2, [[-a, 1], [1, 0]], [-2, -(a + 2)])


def blowup_of(base: SurfaceData, m: int) -> SurfaceData:
    """Blow up ``m`` further points: each adds an orthogonal (-1)-class.

    The canonical class gains coefficient +1 on every new class, so
    K'.K' = K.K - m and the lattice stays unimodular.
    """
    if m < 0:
        raise SurfaceError("number of blowups must be >= 0")
    if m == 0:
        return base
    k = base.k + m
    M = [[base.M[a][b] if a < base.k and b < base.k else 0 for b in range(k)]
         for a in range(k)]
    for e in range(base.k, k):
        M[e][e] = -1
    K = list(base.K) + [1] * m
    return _make(f"{base.name}+blowups:{m}", k, M, K,
                 experimental=base.experimental)


PRESETS = {
    "p2": p2,
    "p1xp1": p1xp1,
}


def parse_surface_file(text: str, name_hint: str = "file") -> SurfaceData:
    """Parse the line-oriented surface file format."""
    name = None
    k = None
    rows = []
    kvec = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "name":
                name = " ".join(parts[1:])
            elif key == "k":
                k = int(parts[1])
            elif key == "M":
                rows.append([int(x) for x in parts[1:]])
            elif key == "K":
                kvec = [int(x) for x in parts[1:]]
            else:
                raise SurfaceError(f"line {lineno}: unknown keyword {key!r}")
        except (IndexError, ValueError) as exc:
            raise SurfaceError(f"line {lineno}: malformed entry {line!r}") from exc
    if k is None or kvec is None or not rows:
        raise SurfaceError("surface file must define k, M and K")
    if len(rows) != k:
        raise SurfaceError(f"expected {k} rows of M, got {len(rows)}")
    return _make(name or name_hint, k, rows, kvec, experimental=True)


def serialize_surface(s: SurfaceData) -> str:
    lines = [f"name {s.name}", f"k {s.k}"]
    lines += ["M " + " ".join(str(x) for x in row) for row in s.M]
    lines.append("K " + " ".join(str(x) for x in s.K))
    return "\n".join(lines) + "\n"


def load_surface(source: str) -> SurfaceData:
    """Resolve a surface selector.

    Accepted forms: ``p2``, ``p1xp1``, ``fa:<a>``, ``file:<path>``, each
    optionally followed by ``+blowups:<m>``.  A string containing newlines is
    treated as file *content* in the format above.
    """
    if "\n" in source:
        return parse_surface_file(source)
    selector = source.strip()
    m = 0
    if "+blowups:" in selector:
        selector, _, tail = selector.partition("+blowups:")
        try:
            m = int(tail)
        except ValueError as exc:
            raise SurfaceError(f"bad blowup count {tail!r}") from exc
    if selector in PRESETS:
        base = PRESETS[selector]()
    elif selector.startswith("fa:"):
        try:
            base = hirzebruch(int(selector[3:]))
        except ValueError as exc:
            raise SurfaceError(f"bad hirzebruch parameter in {selector!r}") from exc
    elif selector.startswith("file:"):
        path = selector[5:]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SurfaceError(f"cannot read surface file {path!r}: {exc}") from exc
        base = parse_surface_file(text, name_hint=path)
    else:
        raise SurfaceError(f"unknown surface selector {selector!r}")
    return blowup_of(base, m)


def r_polynomial(s: SurfaceData) -> tuple[int, int, int]:
    """Point-count polynomial of the surface, coefficients of 1, q, q^2."""
    return (1, s.k, 1)
