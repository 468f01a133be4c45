"""Surface lattice presets, validation, and the file format."""

import pytest

from blowupchow.errors import SurfaceError
from blowupchow.surface import (blowup_of, hirzebruch, load_surface, p1xp1,
                                p2, parse_surface_file, r_polynomial,
                                serialize_surface)


def test_p2():
    s = p2()
    assert (s.k, s.M, s.K) == (1, ((1,),), (-3,))
    assert s.euler == 3
    assert r_polynomial(s) == (1, 1, 1)


def test_p1xp1():
    s = p1xp1()
    assert (s.k, s.M, s.K) == (2, ((0, 1), (1, 0)), (-2, -2))
    assert r_polynomial(s) == (1, 2, 1)


def test_hirzebruch():
    s = hirzebruch(2)
    assert s.M == ((-2, 1), (1, 0))
    assert s.K == (-2, -4)
    assert r_polynomial(s) == (1, 2, 1)
    # K.K = 8 on every Hirzebruch surface
    assert s.pair(s.K, s.K) == 8


def test_blowup_of_p2():
    s = blowup_of(p2(), 1)
    assert s.k == 2
    assert s.M == ((1, 0), (0, -1))
    assert s.K == (-3, 1)
    assert r_polynomial(s) == (1, 2, 1)


def test_blowup_r_polynomial_growth():
    assert r_polynomial(blowup_of(p2(), 3)) == (1, 4, 1)


@pytest.mark.parametrize("base,m", [(p2(), 1), (p2(), 4), (p1xp1(), 2),
                                    (hirzebruch(3), 2)])
def test_blowup_lattice_checks(base, m):
    s = blowup_of(base, m)
    # unimodularity is validated inside the constructor; K.K drops by one
    # per blowup
    assert s.pair(s.K, s.K) == base.pair(base.K, base.K) - m
    assert s.euler == base.euler + m


def test_euler_is_r_at_one():
    for s in (p2(), p1xp1(), hirzebruch(5), blowup_of(p1xp1(), 3)):
        c0, c1, c2 = r_polynomial(s)
        assert c0 + c1 + c2 == s.euler == s.k + 2


def test_round_trip():
    for s in (p2(), hirzebruch(2), blowup_of(p2(), 2)):
        loaded = parse_surface_file(serialize_surface(s))
        assert (loaded.k, loaded.M, loaded.K, loaded.name) == \
            (s.k, s.M, s.K, s.name)
        again = parse_surface_file(serialize_surface(loaded))
        assert again == loaded


def test_file_loads_are_experimental():
    s = parse_surface_file(serialize_surface(p2()))
    assert s.experimental
    assert not p2().experimental


def test_selectors(tmp_path):
    assert load_surface("p2") == p2()
    assert load_surface("fa:2") == hirzebruch(2)
    assert load_surface("p2+blowups:2") == blowup_of(p2(), 2)
    path = tmp_path / "s.txt"
    path.write_text(serialize_surface(p1xp1()))
    s = load_surface(f"file:{path}")
    assert s.M == p1xp1().M and s.experimental
    s2 = load_surface(f"file:{path}+blowups:1")
    assert s2.k == 3 and s2.experimental


def test_validation_errors():
    with pytest.raises(SurfaceError):
        parse_surface_file("k 2\nM 0 1\nM 0 0\nK -2 -2\n")  # not symmetric... and singular
    with pytest.raises(SurfaceError):
        parse_surface_file("k 1\nM 2\nK -3\n")  # det 2, not unimodular
    with pytest.raises(SurfaceError):
        parse_surface_file("k 2\nM 1 0\nK -3 1\n")  # missing row
    with pytest.raises(SurfaceError):
        parse_surface_file("k 1\nM 1\n")  # no K
    with pytest.raises(SurfaceError):
        parse_surface_file("k 1\nM x\nK -3\n")
    with pytest.raises(SurfaceError):
        load_surface("nonsense")
    with pytest.raises(SurfaceError):
        load_surface("p2+blowups:x")


def test_asymmetric_matrix_rejected():
    with pytest.raises(SurfaceError):
        parse_surface_file("k 2\nM 0 1\nM 2 0\nK -2 -2\n")


def test_m_inverse_exact():
    for s in (p2(), p1xp1(), hirzebruch(2), blowup_of(p2(), 2)):
        inv = s.M_inverse()
        k = s.k
        for a in range(k):
            for b in range(k):
                acc = sum(s.M[a][c] * inv[c][b] for c in range(k))
                assert acc == (1 if a == b else 0)
