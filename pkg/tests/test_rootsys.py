import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from windcoset.rootsys import SUPPORTED, OrbitTooLarge, build, dominant_weights_in_ball

from oracles import brute_orbit, weyl_dimension

# (dim g, dual Coxeter number, Coxeter number, |W|)
STANDARD = {
    "A1": (3, 2, 2, 2),
    "A2": (8, 3, 3, 6),
    "G2": (14, 4, 6, 12),
    "F4": (52, 9, 12, 1152),
    "E6": (78, 12, 12, 51840),
    "E7": (133, 18, 18, 2903040),
    "E8": (248, 30, 30, 696729600),
}


@pytest.mark.parametrize("label", SUPPORTED)
def test_standard_invariants(label):
    rs = build(label)
    dim, hv, h, order = STANDARD[label]
    assert rs.dimension == dim
    assert rs.dual_coxeter_number == hv
    assert rs.coxeter_number == h
    assert rs.weyl_order() == order
    assert len(rs.positive_roots) == (dim - rs.rank) // 2


@pytest.mark.parametrize("label", SUPPORTED)
def test_highest_root_and_comarks(label):
    rs = build(label)
    assert rs.norm(rs.highest_root) == 2
    assert rs.is_dominant(rs.highest_root)
    # h^vee = 1 + sum of comarks
    assert sum(rs.affine_comarks) == rs.dual_coxeter_number
    assert rs.affine_comarks[0] == 1
    # theta is the only dominant root of norm 2
    long_dom = [r for r in rs.roots_fw if rs.is_dominant(r) and rs.norm(r) == 2]
    assert long_dom == [rs.highest_root]


@pytest.mark.parametrize("label", SUPPORTED)
def test_adjoint_dimension_from_weyl_formula(label):
    rs = build(label)
    assert weyl_dimension(rs, rs.highest_root) == rs.dimension


def test_known_representation_dimensions():
    e8 = build("E8")
    assert weyl_dimension(e8, e8.fundamental_weight(7)) == 3875
    assert weyl_dimension(e8, e8.fundamental_weight(1)) == 248
    e7 = build("E7")
    assert weyl_dimension(e7, e7.fundamental_weight(6)) == 56
    assert weyl_dimension(e7, e7.fundamental_weight(1)) == 133
    e6 = build("E6")
    assert weyl_dimension(e6, e6.fundamental_weight(1)) == 27
    assert weyl_dimension(e6, e6.fundamental_weight(6)) == 78
    f4 = build("F4")
    assert weyl_dimension(f4, f4.fundamental_weight(4)) == 26
    g2 = build("G2")
    assert weyl_dimension(g2, g2.fundamental_weight(2)) == 7


def test_short_root_norms():
    assert build("G2").root_norms == (2, Fraction(2, 3))
    assert build("F4").root_norms == (2, 2, 1, 1)


@pytest.mark.parametrize("label", ["A1", "A2", "G2", "F4"])
def test_orbit_bfs_and_formula_against_closure(label):
    rs = build(label)
    for w in dominant_weights_in_ball(rs, Fraction(10)):
        n = len(brute_orbit(rs, w))
        assert rs.orbit_size(w) == n
        assert rs.orbit_size_formula(w) == n


def test_e8_small_orbits():
    e8 = build("E8")
    assert e8.orbit_size(e8.highest_root) == 240
    assert e8.orbit_size_formula(e8.highest_root) == 240
    assert e8.orbit_size_formula(e8.fundamental_weight(7)) == e8.orbit_size(e8.fundamental_weight(7))


def test_orbit_cap():
    e8 = build("E8")
    with pytest.raises(OrbitTooLarge):
        e8.orbit_size(e8.rho, cap=1000)
    assert e8.orbit_size_formula(e8.rho) == 696729600


@pytest.mark.parametrize("label", SUPPORTED)
def test_inner_product_is_weyl_invariant(label):
    rs = build(label)
    x, y = rs.rho, rs.highest_root
    for i in range(rs.rank):
        assert rs.inner(rs.reflect(x, i), rs.reflect(y, i)) == rs.inner(x, y)
        assert rs.reflect(rs.reflect(x, i), i) == tuple(x)


@given(st.sampled_from(SUPPORTED), st.data())
@settings(max_examples=60, deadline=None)
def test_to_dominant(label, data):
    rs = build(label)
    x = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    dom, sign, parity = rs.to_dominant(x)
    assert rs.is_dominant(dom)
    assert rs.norm(dom) == rs.norm(x)
    assert rs.in_root_lattice(tuple(a - b for a, b in zip(dom, x)))
    assert rs.to_dominant(dom)[0] == dom
    assert sign == (-1) ** parity


def test_dot_action_sign():
    a1 = build("A1")
    # s.(-2 omega) = 0 with sign -1; -omega sits on the shifted wall
    assert a1.to_dominant((-2,), shifted=True)[:2] == ((0,), -1)
    assert a1.to_dominant((-1,), shifted=True)[1] == 0


def test_root_lattice_membership():
    a2 = build("A2")
    assert a2.in_root_lattice((1, 1))
    assert not a2.in_root_lattice((1, 0))
    e8 = build("E8")
    assert all(e8.in_root_lattice(e8.fundamental_weight(i)) for i in range(1, 9))


def test_json_dump():
    data = json.loads(json.dumps(build("F4").to_json()))
    assert data["comarks"] == [1, 2, 3, 2, 1]
    assert data["dual_coxeter_number"] == 9
    assert len(data["positive_roots_simple_coords"]) == 24


def test_unknown_algebra():
    with pytest.raises(ValueError, match="unsupported"):
        build("B3")
