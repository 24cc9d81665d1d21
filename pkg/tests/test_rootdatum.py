from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from alcovekit.rootdatum import (
    RootDatumError, build_root_datum, conv_hull_contains, conv_hull_contains_by_cones,
    dominance_leq, dominant_cochars, dominant_rep, is_dominant, preset, preset_keys,
    weyl_orbit, weyl_reflect,
)


@pytest.mark.parametrize("key, n_pos, order", [
    ("A1-sc", 1, 2), ("A2-sc", 3, 6), ("A3-ad", 6, 24), ("B2-sc", 4, 8), ("C2-sc", 4, 8),
    ("C3-sc", 9, 48), ("D4-sc", 12, 192), ("G2", 6, 12), ("F4", 24, 1152), ("A2-gl", 3, 6),
])
def test_root_counts_and_weyl_orders(key, n_pos, order):
    rd = preset(key)
    assert rd.n_pos == n_pos
    assert len(rd.weyl_group()) == order


@pytest.mark.parametrize("key", ["A2-sc", "B3-sc", "C3-ad", "D4-sc", "G2", "F4", "A3-gl"])
def test_datum_invariants(key):
    rd = preset(key)
    for i in range(rd.rank):
        for j in range(rd.rank):
            assert rd.pairing(rd.simple_roots[j], rd.simple_coroots[i]) == rd.cartan[i][j]
    vecs = {rt.vec for rt in rd.roots}
    for rt in rd.roots:
        # reduced, and positive roots are nonnegative combinations of simple roots
        assert tuple(2 * x for x in rt.vec) not in vecs
        assert all(c >= 0 for c in rt.coeffs) or all(c <= 0 for c in rt.coeffs)
        assert rt.positive == all(c >= 0 for c in rt.coeffs)
        assert rd.pairing(rt.vec, rt.covec) == 2


def test_bourbaki_cartan_conventions():
    assert preset("B3-sc").cartan[2][1] == -2
    assert preset("C3-sc").cartan[1][2] == -2
    assert preset("G2").cartan[0][1] == -3
    assert preset("F4").cartan[2][1] == -2


def test_highest_roots():
    assert [preset("G2").roots[h].coeffs for h in preset("G2").highest_roots] == [(3, 2)]
    assert [preset("C2-sc").roots[h].coeffs for h in preset("C2-sc").highest_roots] == [(2, 1)]
    assert len(preset("D2-sc").highest_roots) == 2


@pytest.mark.parametrize("bad", ["E6", "A0-sc", "B1-sc", "C2-gl", "A2-xx", "A6-sc", "nonsense"])
def test_bad_presets(bad):
    with pytest.raises(RootDatumError):
        preset(bad)


def test_preset_keys_all_build():
    keys = list(preset_keys())
    assert "A1-gl" in keys and "F4-ad" in keys
    for k in keys:
        if k[0] in "AB" and int(k[1]) <= 3:
            preset(k)


def test_weyl_reflect_examples():
    A1, A2 = preset("A1-sc"), preset("A2-sc")
    assert weyl_reflect(A1, 0, (1,)) == (-1,)
    assert weyl_reflect(A1, 0, (0,)) == (0,)
    assert weyl_reflect(A2, 0, (0, 1)) == (1, 1)
    with pytest.raises(RootDatumError):
        weyl_reflect(A1, 5, (0,))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A2-sc", "C2-sc", "G2", "B3-ad"]), st.data())
def test_reflections_are_involutions(key, data):
    rd = preset(key)
    idx = data.draw(st.integers(0, len(rd.roots) - 1))
    v = tuple(data.draw(st.fractions(-5, 5, max_denominator=6)) for _ in range(rd.dim))
    assert weyl_reflect(rd, idx, weyl_reflect(rd, idx, v)) == v


def test_orbits():
    A1, A2 = preset("A1-sc"), preset("A2-sc")
    assert weyl_orbit(A1, (1,)) == {(1,), (-1,)}
    assert weyl_orbit(A2, (0, 0)) == {(0, 0)}
    orb = weyl_orbit(A2, (1, 1))
    assert len(orb) == 6
    for v in orb:
        assert all(weyl_reflect(A2, i, v) in orb for i in range(2))
    assert sum(is_dominant(A2, v) for v in orb) == 1


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A2-sc", "C2-sc", "G2", "A3-gl"]), st.data())
def test_dominant_rep(key, data):
    rd = preset(key)
    v = tuple(data.draw(st.integers(-4, 4)) for _ in range(rd.dim))
    vp, w = dominant_rep(rd, v)
    assert is_dominant(rd, vp)
    assert w.act(v) == vp


def test_dominant_rep_examples():
    A1 = preset("A1-sc")
    vp, w = dominant_rep(A1, (-1,))
    assert vp == (1,) and w == A1.simple_reflection(0)
    vp, w = dominant_rep(A1, (2,))
    assert vp == (2,) and w.is_identity()


def test_dominance_examples():
    A1, A2 = preset("A1-sc"), preset("A2-sc")
    assert dominance_leq(A1, (0,), (1,))
    assert dominance_leq(A2, (1, 1), (1, 1))
    # fundamental coweights of A2-ad: incomparable
    ad = preset("A2-ad")
    assert not dominance_leq(ad, (1, 0), (0, 1))
    assert not dominance_leq(ad, (0, 1), (1, 0))
    with pytest.raises(RootDatumError):
        dominance_leq(A2, (1, 0), (1, 1))


@pytest.mark.parametrize("key", ["A2-sc", "C2-sc"])
def test_dominance_is_partial_order(key):
    rd = preset(key)
    doms = [v for v in product(range(-4, 5), repeat=2) if is_dominant(rd, v)
            and rd.in_coroot_lattice(v)]
    for a in doms:
        assert dominance_leq(rd, a, a)
        for b in doms:
            if a != b and dominance_leq(rd, a, b):
                assert not dominance_leq(rd, b, a)
            for c in doms:
                if dominance_leq(rd, a, b) and dominance_leq(rd, b, c):
                    assert dominance_leq(rd, a, c)


def test_conv_hull_examples():
    A1 = preset("A1-sc")
    assert conv_hull_contains(A1, (1,), (0,))
    assert not conv_hull_contains(A1, (1,), (Fraction(3, 2),))
    assert conv_hull_contains(A1, (1,), (1,))
    assert conv_hull_contains(A1, (1,), (Fraction(-1, 2),))


@pytest.mark.parametrize("key, mu", [("A1-sc", (1,)), ("A1-sc", (2,)), ("A2-sc", (1, 1)),
                                     ("A2-sc", (2, 1)), ("C2-sc", (1, 1)), ("C2-sc", (1, 2))])
def test_conv_hull_implementations_agree(key, mu):
    rd = preset(key)
    b = 3 * max(mu)
    for v in product(range(-b, b + 1), repeat=rd.dim):
        assert conv_hull_contains(rd, mu, v) == conv_hull_contains_by_cones(rd, mu, v)


def test_conv_hull_rational_points_agree():
    rd = preset("A2-sc")
    for v in product([Fraction(k, 3) for k in range(-6, 7)], repeat=2):
        assert conv_hull_contains(rd, (1, 1), v) == conv_hull_contains_by_cones(rd, (1, 1), v)


def test_dominant_cochars():
    rd = preset("A2-ad")
    mus = dominant_cochars(rd, 4)
    assert (1, 0) in mus and (0, 1) in mus and (1, 1) in mus
    assert all(is_dominant(rd, m) for m in mus)
    assert all(sum(a * b for a, b in zip(rd.two_rho, m)) <= 4 for m in mus)
    # the central direction of gl is not enumerated
    assert all(sum(m) >= 0 and m[-1] == 0 for m in dominant_cochars(preset("A2-gl"), 4))


def test_build_root_datum_errors():
    with pytest.raises(RootDatumError):
        build_root_datum("G", 3)
    with pytest.raises(RootDatumError):
        build_root_datum("B", 2, "gl")
