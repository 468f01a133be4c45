"""Brute-force point counts over F_q via the infinitely-near-point model.

A point of the n-blowup moduli space over F_q is a sequence p_1, ..., p_n
where p_m lives on the surface obtained by blowing up the first m-1 choices.
Only two facts about blowups enter the count: blowing up removes one rational
point and adds the q+1 points of a new line, and a point of the blown-up
surface projects either to itself or (on the new line) to the blowup center.
So points are modeled as opaque tokens:

* ``("b", t)``      -- one of the r(q) = q^2 + kq + 1 base-surface points
                       (the model presumes the split form, where the count
                       r(q) is exact; non-split twists are out of scope);
* ``("e", m, t)``   -- one of the q+1 points of the line created at stage m,
                       0 <= t <= q.

A token exists on the stage-m surface iff it was created before stage m and
is not one of the earlier centers.  No coordinates, no field arithmetic: the
identification of moduli points with valid token tuples rests on blowup
centers being rational sections, which holds by construction here and is the
model's one assumption.

Divisor membership is the projection test: the tuple lies on the (i,j)
divisor iff chasing p_j down to stage i lands exactly on p_i.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import BudgetExceededError
from .surface import SurfaceData, r_polynomial

__all__ = [
    "PointTuple",
    "base_token",
    "exceptional_token",
    "surface_points",
    "formula_count",
    "enumerate_tuples",
    "project",
    "in_divisor",
    "count_points",
    "verify_counts",
    "CountReport",
    "default_budget",
]

DEFAULT_BUDGET = 100_000_000


def default_budget() -> int:
    env = os.environ.get("BLOWUPCHOW_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET


def base_token(t: int):
    return ("b", t)


def exceptional_token(stage: int, t: int):
    return ("e", stage, t)


def surface_points(s: SurfaceData, q: int) -> int:
    c0, c1, c2 = r_polynomial(s)
    return c2 * q * q + c1 * q + c0


def formula_count(s: SurfaceData, n: int, q: int) -> int:
    """The closed-form total: prod_{i=0}^{n-1} (r(q) + i q)."""
    r = surface_points(s, q)
    total = 1
    for i in range(n):
        total *= r + i * q
    return total


@dataclass(frozen=True)
class PointTuple:
    """A validated F_q-point: the chosen center at each stage."""

    q: int
    points: tuple

    def center(self, stage: int):
        return self.points[stage - 1]

    def truncate(self, m: int) -> "PointTuple":
        return PointTuple(self.q, self.points[:m])

    def is_valid(self, s: SurfaceData) -> bool:
        npts = surface_points(s, self.q)
        for m, tok in enumerate(self.points, start=1):
            if tok[0] == "b":
                if not 0 <= tok[1] < npts:
                    return False
            else:
                if not (1 <= tok[1] < m and 0 <= tok[2] <= self.q):
                    return False
            if tok in self.points[:m - 1]:
                return False
        return True


def project(t: PointTuple, token, target_stage: int):
    """Image of a token on the stage-``target_stage`` surface.

    Collapses lines created at or after the target stage onto their centers;
    idempotent once the token predates the target stage.
    """
    while token[0] == "e" and token[1] >= target_stage:
        token = t.center(token[1])
    return token


def in_divisor(t: PointTuple, i: int, j: int) -> bool:
    """Whether the tuple lies on the (i,j) incidence divisor (i < j)."""
    if not (1 <= i < j <= len(t.points)):
        raise ValueError(f"need 1 <= i < j <= {len(t.points)}")
    return project(t, t.center(j), i) == t.center(i)


def enumerate_tuples(s: SurfaceData, n: int, q: int):
    """Yield every valid tuple once, in a fixed depth-first order.

    Stage-m candidates are the base tokens in index order, then the
    exceptional tokens in (stage, slot) order, skipping earlier centers; the
    fiber over any prefix has exactly r(q) + (m-1) q extensions.
    """
    npts = surface_points(s, q)
    base = [("b", t) for t in range(npts)]

    def rec(prefix):
        m = len(prefix) + 1
        if m > n:
            yield PointTuple(q, tuple(prefix))
            return
        used = set(prefix)
        for tok in base:
            if tok not in used:
                prefix.append(tok)
                yield from rec(prefix)
                prefix.pop()
        for stage in range(1, m):
            for t in range(q + 1):
                tok = ("e", stage, t)
                if tok not in used:
                    prefix.append(tok)
                    yield from rec(prefix)
                    prefix.pop()

    if n == 0:
        yield PointTuple(q, ())
        return
    yield from rec([])


def _check_budget(s, n, q, budget):
    total = formula_count(s, n, q)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"enumerating {total} tuples exceeds the budget {budget}",
            formula_count=total)
    return total


def count_points(s: SurfaceData, n: int, q: int,
                 divisor_constraints=(), mode: str = "all",
                 budget: int | None = None) -> int:
    """Count valid tuples under divisor constraints.

    ``mode='none'`` ignores the constraints (unconstrained total),
    ``mode='all'`` requires membership in every listed divisor,
    ``mode='exact'`` additionally requires non-membership in every other
    divisor.  Raises BudgetExceededError (carrying the closed-form total)
    when the enumeration would be too large.
    """
    if mode not in ("all", "none", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    constraints = sorted(set(divisor_constraints))
    for (i, j) in constraints:
        if not (1 <= i < j <= n):
            raise ValueError(f"divisor pair ({i},{j}) out of range for n={n}")
    if budget is None:
        budget = default_budget()
    _check_budget(s, n, q, budget)
    count = 0
    if mode == "none" or (mode == "all" and not constraints):
        return _count_unconstrained(s, n, q)
    all_pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    wanted = set(constraints)
    for t in enumerate_tuples(s, n, q):
        if mode == "all":
            if all(in_divisor(t, i, j) for (i, j) in constraints):
                count += 1
        elif all(in_divisor(t, i, j) == ((i, j) in wanted)
                 for (i, j) in all_pairs):
            count += 1
    return count


def _count_unconstrained(s, n, q):
    """Walk the full choice tree without materializing tuples.

    Same canonical order and skip rules as ``enumerate_tuples``; only the
    leaf count is kept.
    """
    npts = surface_points(s, q)
    used = set()
    count = 0

    def rec(m):
        nonlocal count
        if m > n:
            count += 1
            return
        for t in range(npts):
            tok = ("b", t)
            if tok not in used:
                used.add(tok)
                rec(m + 1)
                used.discard(tok)
        for stage in range(1, m):
            for t in range(q + 1):
                tok = ("e", stage, t)
                if tok not in used:
                    used.add(tok)
                    rec(m + 1)
                    used.discard(tok)

    rec(1)
    return count


@dataclass
class CountReport:
    """Structured result of the counting consistency checks."""

    surface: str
    n: int
    q: int
    entries: list = field(default_factory=list)

    def add(self, name: str, ok: bool, got, want):
        self.entries.append({"name": name, "ok": bool(ok),
                             "got": got, "want": want})

    @property
    def ok(self) -> bool:
        return all(e["ok"] for e in self.entries)


def verify_counts(s: SurfaceData, n: int, q: int,
                  budget: int | None = None) -> CountReport:
    """Check the three counting identities by exhaustive enumeration.

    1. the total equals the closed-form product;
    2. intersecting divisors compose: the (i,j)&(j,k) and (i,k)&(j,k) loci
       coincide tuple-by-tuple, for every i < j < k;
    3. every fiber of the forgetful map to n-1 stages has exactly
       r(q) + (n-1) q points.

    Failures become report entries, not exceptions.
    """
    report = CountReport(s.name, n, q)
    if budget is None:
        budget = default_budget()
    _check_budget(s, n, q, budget)
    triples = [(i, j, k) for k in range(3, n + 1)
               for j in range(2, k) for i in range(1, j)]
    total = 0
    bad_triples = {tr: 0 for tr in triples}
    fibers = {}
    for t in enumerate_tuples(s, n, q):
        total += 1
        for (i, j, k) in triples:
            jk = in_divisor(t, j, k)
            if (in_divisor(t, i, j) and jk) != (in_divisor(t, i, k) and jk):
                bad_triples[(i, j, k)] += 1
        if n >= 1:
            prefix = t.points[:-1]
            fibers[prefix] = fibers.get(prefix, 0) + 1
    want_total = formula_count(s, n, q)
    report.add("total", total == want_total, total, want_total)
    for tr, bad in bad_triples.items():
        report.add(f"divisor-identity {tr[0]},{tr[1]},{tr[2]}", bad == 0,
                   f"{bad} mismatching tuples", "0 mismatching tuples")
    if n >= 1:
        fiber_size = surface_points(s, q) + (n - 1) * q
        sizes = set(fibers.values())
        ok = sizes == {fiber_size} and len(fibers) == (
            formula_count(s, n - 1, q))
        report.add("fiber-uniformity", ok,
                   f"sizes {sorted(sizes)} over {len(fibers)} fibers",
                   f"size {fiber_size} over {formula_count(s, n - 1, q)} fibers")
    return report
