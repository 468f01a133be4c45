"""Finite-field point enumeration and its counting identities."""

import pytest

from blowupchow.errors import BudgetExceededError
from blowupchow.pointcount import (PointTuple, base_token, count_points,
                                   enumerate_tuples, exceptional_token,
                                   formula_count, in_divisor, project,
                                   surface_points, verify_counts)
from blowupchow.surface import load_surface, p1xp1, p2

from conftest import PRESET_SELECTORS


def T(q, *tokens):
    return PointTuple(q, tuple(tokens))


# ---------------------------------------------------------------------------
# projection and divisor membership


def test_project_fixes_base_points():
    t = T(2, base_token(0), base_token(3))
    for stage in (1, 2):
        assert project(t, base_token(3), stage) == base_token(3)


def test_project_exceptional_to_center():
    t = T(2, base_token(0), exceptional_token(1, 1))
    assert project(t, exceptional_token(1, 1), 1) == base_token(0)
    # idempotent once below the target stage
    assert project(t, base_token(0), 1) == base_token(0)


def test_project_two_step_chase():
    # p2 sits on the first line, p3 on the second; chasing to stage 1 lands
    # on p1
    t = T(2, base_token(0), exceptional_token(1, 0), exceptional_token(2, 1))
    assert project(t, exceptional_token(2, 1), 2) == exceptional_token(1, 0)
    assert project(t, exceptional_token(2, 1), 1) == base_token(0)


def test_in_divisor_examples():
    t = T(2, base_token(0), exceptional_token(1, 1))
    assert in_divisor(t, 1, 2)
    t2 = T(2, base_token(0), base_token(1))
    assert not in_divisor(t2, 1, 2)
    t3 = T(2, base_token(0), exceptional_token(1, 0), exceptional_token(2, 1))
    assert in_divisor(t3, 1, 3) and in_divisor(t3, 2, 3)


def test_in_divisor_monotone_under_truncation():
    # membership in D_ij only depends on the first j entries
    q = 2
    for t in enumerate_tuples(p2(), 3, q):
        for m in (2, 3):
            for j in range(2, m + 1):
                for i in range(1, j):
                    assert in_divisor(t.truncate(m), i, j) == in_divisor(t, i, j)


def test_validity():
    assert T(2, base_token(0), exceptional_token(1, 2)).is_valid(p2())
    # reusing a center is invalid
    assert not T(2, base_token(0), base_token(0)).is_valid(p2())
    # a line cannot exist before its stage
    assert not T(2, exceptional_token(1, 0)).is_valid(p2())
    assert not T(2, base_token(99)).is_valid(p2())


# ---------------------------------------------------------------------------
# counting


def test_surface_points():
    assert surface_points(p2(), 2) == 7
    assert surface_points(p2(), 3) == 13
    assert surface_points(p1xp1(), 3) == 16


def test_count_examples_from_the_product_formula():
    assert count_points(p2(), 2, 2) == 63
    assert count_points(p2(), 3, 2) == 693
    assert count_points(p2(), 1, 3) == 13
    assert count_points(p1xp1(), 2, 3) == 304


def test_divisor_counts():
    # one divisor: a line bundle's worth of points over the diagonal
    assert count_points(p2(), 2, 2, {(1, 2)}) == 21
    assert 21 == (2 + 1) * surface_points(p2(), 2)
    # chained incidence at n=3: stratify by whether (p1,p2) meet
    q = 2
    assert count_points(p2(), 3, q, {(1, 3)}) == 231
    assert 231 == 21 * (2 * q + 1) + (63 - 21) * (q + 1)


def test_count_modes():
    s = p2()
    n, q = 3, 2
    total = count_points(s, n, q, {(1, 2)}, mode="none")
    assert total == formula_count(s, n, q)
    pairs = [(1, 2), (1, 3), (2, 3)]
    exact_sum = 0
    for mask in range(8):
        subset = {p for i, p in enumerate(pairs) if mask >> i & 1}
        exact_sum += count_points(s, n, q, subset, mode="exact")
    # the exact-incidence strata partition the space
    assert exact_sum == total
    # 'all' dominates 'exact' for the same constraint set
    assert count_points(s, n, q, {(1, 2)}, mode="all") >= \
        count_points(s, n, q, {(1, 2)}, mode="exact")


@pytest.mark.parametrize("selector", ("p2", "p1xp1"))
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_totals_match_formula(selector, q):
    s = load_surface(selector)
    for n in range(5):
        assert count_points(s, n, q) == formula_count(s, n, q), (n, q)


def test_enumeration_is_duplicate_free():
    for (s, n, q) in ((p2(), 3, 2), (p1xp1(), 2, 3)):
        seen = set(t.points for t in enumerate_tuples(s, n, q))
        assert len(seen) == formula_count(s, n, q)
        for t in enumerate_tuples(s, n, q):
            assert t.is_valid(s)
            break


def test_fiber_uniformity():
    # the inductive step: every fiber of the forgetful map has r(q)+(n-1)q
    # points
    for (s, n, q) in ((p2(), 2, 2), (p2(), 3, 2), (p1xp1(), 3, 3)):
        fibers = {}
        for t in enumerate_tuples(s, n, q):
            fibers[t.points[:-1]] = fibers.get(t.points[:-1], 0) + 1
        assert set(fibers.values()) == {surface_points(s, q) + (n - 1) * q}
        assert len(fibers) == formula_count(s, n - 1, q)


@pytest.mark.parametrize("selector", ("p2", "p1xp1"))
@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [3, 4])
def test_divisor_set_identity(selector, q, n):
    # D_ij & D_jk == D_ik & D_jk, tuple by tuple
    s = load_surface(selector)
    triples = [(i, j, k) for k in range(3, n + 1)
               for j in range(2, k) for i in range(1, j)]
    for t in enumerate_tuples(s, n, q):
        for (i, j, k) in triples:
            jk = in_divisor(t, j, k)
            assert (in_divisor(t, i, j) and jk) == (in_divisor(t, i, k) and jk)


@pytest.mark.parametrize("selector", PRESET_SELECTORS)
def test_verify_counts_report(selector):
    s = load_surface(selector)
    report = verify_counts(s, 3, 2)
    assert report.ok
    names = [e["name"] for e in report.entries]
    assert "total" in names and "fiber-uniformity" in names
    assert any(n.startswith("divisor-identity") for n in names)


def test_budget_error_carries_formula():
    with pytest.raises(BudgetExceededError) as err:
        count_points(p2(), 3, 2, budget=100)
    assert err.value.formula_count == 693
    with pytest.raises(BudgetExceededError):
        verify_counts(p2(), 3, 2, budget=100)


def test_bad_inputs():
    with pytest.raises(ValueError):
        count_points(p2(), 2, 1)
    with pytest.raises(ValueError):
        count_points(p2(), 2, 2, {(2, 1)})
    with pytest.raises(ValueError):
        count_points(p2(), 2, 2, mode="some")


def test_n0_single_empty_tuple():
    assert count_points(p2(), 0, 2) == 1
    assert [t.points for t in enumerate_tuples(p2(), 0, 2)] == [()]
