from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from windcoset.qseries import (NonIntegerExponents, NonUnitLeadingCoefficient, QSeries, euler_phi,
                               invert, parity_part, partitions_series, substitute_power)

from oracles import colored_partitions, count_partitions, fermion_product, pentagonal_phi


def series_strategy(max_len=8, dens=(1, 2)):
    return st.builds(
        lambda coeffs, off_num, den, extra: QSeries.from_coeffs(
            coeffs, offset=Fraction(off_num, den), step_den=den,
            trunc=Fraction(off_num, den) + Fraction(len(coeffs) + extra, den)),
        st.lists(st.integers(-20, 20), min_size=1, max_size=max_len),
        st.integers(-3, 3),
        st.sampled_from(dens),
        st.integers(0, 3),
    )


def test_euler_phi_matches_pentagonal_theorem():
    phi = euler_phi(60)
    assert list(phi.coeffs) == pentagonal_phi(60)
    assert phi.trunc == 61


def test_inverse_phi_counts_partitions():
    p = invert(euler_phi(40))
    assert [p[n] for n in range(41)] == [count_partitions(n) for n in range(41)]


def test_colored_partitions():
    assert list(partitions_series(12, 8).coeffs[:13]) == colored_partitions(12, 8)
    assert list(partitions_series(5, 8).coeffs[:4]) == [1, 8, 44, 192]


def test_inverse_round_trip():
    phi = euler_phi(30)
    assert phi * invert(phi) == QSeries.one()


def test_fermion_product_from_phi_quotient():
    # prod (1 + q^(n+1/2)) = phi(q)^2 / (phi(q^(1/2)) phi(q^2)), checked at q -> q^2
    order = 30
    lhs = fermion_product(order)
    phi1 = euler_phi(order)
    phi2 = substitute_power(euler_phi(order), 2)
    phi4 = substitute_power(euler_phi(order), 4)
    rhs = phi2 * phi2 * invert(phi1) * invert(phi4)
    assert [rhs[n] for n in range(order + 1)] == lhs


def test_offsets_and_grids():
    a = QSeries.from_coeffs([1, 2], offset=Fraction(1, 16), trunc="exact")
    b = QSeries.from_coeffs([3], offset=Fraction(1, 2), trunc="exact")
    s = a + b
    assert s.terms() == {Fraction(1, 16): 1, Fraction(17, 16): 2, Fraction(1, 2): 3}
    assert substitute_power(a, 2).terms() == {Fraction(1, 8): 1, Fraction(17, 8): 2}
    assert (a * b).terms() == {Fraction(9, 16): 3, Fraction(25, 16): 6}


def test_truncation_propagates_through_products():
    a = QSeries.from_coeffs([1, 1], trunc=2)          # 1 + q + O(q^2)
    b = QSeries.from_coeffs([1, 0, 0, 5], trunc=4)    # known to q^3
    c = a * b
    assert c.trunc == 2
    assert c.terms() == {Fraction(0): 1, Fraction(1): 1}
    with pytest.raises(IndexError):
        c[2]


def test_unknown_coefficient_is_not_zero():
    a = QSeries.from_coeffs([1, 2], trunc=2)
    assert a[1] == 2
    with pytest.raises(IndexError):
        a[5]
    assert QSeries.from_coeffs([1, 2], trunc="exact")[5] == 0


def test_equality_compares_on_overlap():
    a = QSeries.from_coeffs([1, 2, 3], trunc=3)
    b = QSeries.from_coeffs([1, 2], trunc=2)
    assert a == b
    assert a != QSeries.from_coeffs([1, 3], trunc=2)


def test_invert_needs_unit():
    with pytest.raises(NonUnitLeadingCoefficient):
        invert(QSeries.from_coeffs([2, 1], trunc=4))
    with pytest.raises(ValueError):
        invert(QSeries.from_coeffs([1, 1], trunc="exact"))


def test_parity_part():
    a = QSeries.from_coeffs([1, 2, 3, 4, 5], trunc=5)
    assert parity_part(a, "even").terms() == {0: 1, 2: 3, 4: 5}
    assert parity_part(a, "odd").terms() == {1: 2, 3: 4}
    assert parity_part(a, "even") + parity_part(a, "odd") == a
    with pytest.raises(NonIntegerExponents):
        parity_part(QSeries.monomial(Fraction(1, 2)), "even")
    with pytest.raises(ValueError):
        parity_part(a, "both")


def test_hash_is_refused():
    with pytest.raises(TypeError):
        hash(QSeries.one())


def test_power():
    a = QSeries.from_coeffs([1, 1], trunc="exact")
    assert list((a ** 4).coeffs) == [1, 4, 6, 4, 1]
    assert a ** 0 == QSeries.one()


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(series_strategy())
@settings(max_examples=60, deadline=None)
def test_json_round_trip(a):
    b = QSeries.from_json(a.to_json())
    assert b.offset == a.offset and b.trunc == a.trunc
    assert b.terms() == a.terms()


@given(series_strategy(dens=(1,)), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_substitution_is_a_ring_map(a, j):
    b = QSeries.from_coeffs([1, -1, 2], trunc=3)
    assert substitute_power(a * b, j) == substitute_power(a, j) * substitute_power(b, j)
    assert substitute_power(a + b, j) == substitute_power(a, j) + substitute_power(b, j)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=10), st.sampled_from([1, -1]))
@settings(max_examples=60, deadline=None)
def test_inverse_property(tail, unit):
    a = QSeries.from_coeffs([unit] + tail, trunc=len(tail) + 1)
    assert a * invert(a) == QSeries.one()
