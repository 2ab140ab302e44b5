import dataclasses
import json
from fractions import Fraction

import pytest

from windcoset.affine import branching_prefactor, conformal_dimension, coset_central_charge
from windcoset.coset import (IDENTITIES, PROJECTIONS, BranchingTerm, Decomposition,
                             TruncationTooShallow, catalog, check_doubling,
                             extract_branching, get_case, recorded_labels_consistent, reflect_zero,
                             verify_branching, verify_e8_doubling, verify_projection)
from windcoset.qseries import QSeries, euler_phi, invert, substitute_power
from windcoset.virasoro import MinimalModelLabel, OutOfKacTable, unitary_central_charge

F = Fraction


def test_catalog_shape():
    cases = catalog()
    assert [c.algebra for c in cases] == ["A1", "A2", "E8", "E7", "E6", "G2", "F4"]
    assert sum(len(c.decompositions) for c in cases) == 13
    assert {c.algebra: len(c.decompositions) for c in cases} == {
        "A1": 2, "A2": 2, "E8": 1, "E7": 2, "E6": 2, "G2": 2, "F4": 2}


@pytest.mark.parametrize("case", catalog(), ids=lambda c: c.algebra)
def test_case_invariants(case):
    assert case.coset_central_charge == unitary_central_charge(case.m)
    assert case.coset_central_charge == coset_central_charge(case.algebra, 1, 2)
    assert case.prefactor == branching_prefactor(case.algebra, 1, 2)
    for dec in case.decompositions:
        assert case.parent_weight(dec.parent).level == 1
        for term in dec.terms:
            assert case.child_weight(term.child).level == 2
            assert 1 <= len(term.labels) <= 2


def test_recorded_data_samples():
    a1 = get_case("A1")
    assert a1.m == 3 and a1.prefactor == F(1, 8)
    assert [(t.labels, t.child) for t in a1.decomposition("L0").terms] == [
        (((1, 2),), "2L0"), (((2, 2),), "2L1")]
    assert [(t.labels, t.child) for t in a1.decomposition("L1").terms] == [
        (((1, 1), (2, 1)), "L0+L1")]
    g2 = get_case("G2")
    assert g2.m == 9 and len(g2.decompositions) == 2
    assert all(len(d.terms) == 4 for d in g2.decompositions)
    assert g2.decomposition("L2").terms[0].labels == ((1, 4), (8, 4))
    e6 = get_case("E6")
    assert e6.decomposition("L0").terms[2].labels == ((2, 3), (2, 4))
    f4 = get_case("F4")
    assert f4.decomposition("L4").terms[4].labels == ((4, 5), (4, 6))
    assert get_case("A2").decomposition("L0").terms[0].labels == ((1, 2), (4, 2))


def test_every_recorded_label_fits_the_exponents_except_two():
    bad = []
    for case in catalog():
        for dec in case.decompositions:
            for term in dec.terms:
                if not recorded_labels_consistent(case, dec.parent, term):
                    bad.append((case.algebra, dec.parent, term.labels, term.child))
    assert bad == [("E7", "L0", ((3, 2),), "L5"), ("E7", "L0", ((4, 2),), "2L6")]


def test_e7_reading():
    e7 = get_case("E7")
    terms = e7.decomposition("L0").terms
    with pytest.raises(OutOfKacTable):
        MinimalModelLabel(4, 4, 2)
    assert [t.used_labels for t in terms] == [((2, 1),), ((2, 2),), ((2, 3),), ((2, 4),)]
    # the reading is forced: p + h(parent) = 2(h_vir + h_child) mod 1 has these solutions only
    for term in terms:
        h_child = conformal_dimension("E7", 2, e7.child_weight(term.child))
        fits = {lab.h for lab in (MinimalModelLabel(4, r, s) for r in range(1, 4) for s in range(1, 5))
                if (2 * (lab.h + h_child) - F(7, 8)).denominator == 1}
        assert fits == {MinimalModelLabel(4, *term.used_labels[0]).h}
    assert all(t.reading is None for t in e7.decomposition("L6").terms)


def test_e7_label_substitutions():
    e7 = get_case("E7")
    dec = e7.decomposition("L0")
    kept = tuple(t for t in dec.terms if t.reading is None)
    swapped = BranchingTerm(((2, 2),), "L5")       # a valid label with the wrong dimension
    bad = dataclasses.replace(e7, decompositions=(Decomposition("L0", kept + (swapped, dec.terms[3])),))
    rep = verify_branching(bad, "L0", 4)
    assert rep.passed          # (2,2) and (2,3) name the same module
    wrong = BranchingTerm(((1, 3),), "L5")
    bad = dataclasses.replace(e7, decompositions=(Decomposition("L0", kept + (wrong, dec.terms[3])),))
    rep = verify_branching(bad, "L0", 4)
    assert not rep.passed and not rep.trace_pass and not rep.normalized_pass


@pytest.mark.parametrize("parent", ["L0", "L1"])
def test_a1_rows_full_depth(parent):
    rep = verify_branching(get_case("A1"), parent, 24, "full-z")
    assert rep.passed, rep.to_json()
    assert rep.verified_order == 24
    assert rep.residual_zero and rep.nonnegative and rep.support_equal


def test_a1_leading_terms():
    rep = verify_branching(get_case("A1"), "L1", 4)
    (term,) = rep.terms
    assert term.extracted.leading() == (0, 1)
    assert term.expected.leading() == (0, 1)


@pytest.mark.parametrize("case", catalog(), ids=lambda c: c.algebra)
def test_all_rows_shallow_full_z(case):
    for dec in case.decompositions:
        rep = verify_branching(case, dec.parent, 4, "full-z")
        assert rep.passed, (case.algebra, dec.parent, rep.problems, rep.unexpected)
        assert rep.conventions_agree


def test_wrong_label_is_caught():
    a1 = get_case("A1")
    bad = dataclasses.replace(a1, decompositions=(
        Decomposition("L1", (BranchingTerm(((1, 1), (1, 2)), "L0+L1"),)),))
    rep = verify_branching(bad, "L1", 10)
    assert not rep.passed
    assert not rep.trace_pass and not rep.normalized_pass
    assert not rep.terms[0].passed
    assert not rep.support_equal or not rep.residual_zero


def test_missing_sector_is_caught():
    a1 = get_case("A1")
    bad = dataclasses.replace(a1, decompositions=(Decomposition("L0", (BranchingTerm(((1, 2),), "2L0"),)),))
    rep = verify_branching(bad, "L0", 10)
    assert not rep.passed and not rep.trace_pass and not rep.normalized_pass
    assert set(rep.unexpected) == {"2L1"}


def test_invalid_case_rejected():
    a1 = get_case("A1")
    with pytest.raises(ValueError):
        dataclasses.replace(a1, prefactor=F(1, 4))
    with pytest.raises(ValueError):
        dataclasses.replace(a1, m=4)
    with pytest.raises(OutOfKacTable):
        dataclasses.replace(a1, decompositions=(Decomposition("L1", (BranchingTerm(((3, 1),), "L0+L1"),)),))


def test_extraction_is_independent_of_virasoro_data():
    a1 = get_case("A1")
    pw = a1.parent_weight("L0")
    bound = F(1, 8) + 13
    f = extract_branching(a1, pw, bound)
    assert set(f) == {(0,), (2,)}
    # both sectors carry the Ising sigma module: q^(1/8) phi(q^4)/phi(q^2)
    sigma = (substitute_power(euler_phi(8), 4) * invert(substitute_power(euler_phi(13), 2))).shifted(F(1, 8))
    for series in f.values():
        assert series.trunc >= F(1, 8) + 12
        assert series == sigma
        assert all(c >= 0 for c in series.coeffs)


def test_report_json():
    rep = verify_branching(get_case("G2"), "L2", 3)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["passed"] and data["verified_order"] == "3"
    assert len(data["terms"]) == 4 and data["residual"] == []


def test_z1_mode_and_bad_inputs():
    case = get_case("E8")
    rep = verify_branching(case, "L0", 3, "z=1")
    assert rep.passed and rep.mode == "z=1"
    assert list(rep.residual) == [()]
    with pytest.raises(TruncationTooShallow):
        verify_branching(case, "L0", -1)
    with pytest.raises(ValueError):
        verify_branching(case, "L0", 2, "weird")
    with pytest.raises(KeyError):
        verify_branching(case, "L3", 2)


@pytest.mark.parametrize("name", sorted(PROJECTIONS))
def test_projections(name):
    rep = verify_projection(get_case("A1"), name)
    assert rep.passed, rep.to_json()
    assert rep.leading_coefficient == 1


def test_reflected_maximal_vector():
    pw = get_case("A1").parent_weight("L0")
    assert reflect_zero(pw) == ((2,), 1)
    rep = verify_projection(get_case("A1"), "reflected")
    assert rep.child == "2L1" and rep.grade == 1


def test_unknown_projection():
    with pytest.raises(KeyError):
        verify_projection(get_case("A1"), "sideways")


def test_doubling_identities():
    rep = verify_e8_doubling(12)
    assert rep.passed, rep.to_json()
    names = {c.name.split()[0] for c in rep.checks}
    assert names == set(IDENTITIES)
    assert check_doubling(0).passed     # constant term 1 = 1
    with pytest.raises(KeyError):
        verify_e8_doubling(4, which=["nope"])


def test_identity_detects_perturbation():
    from windcoset.coset import _agree
    a = QSeries.from_coeffs([1, 2, 3], trunc=3)
    b = QSeries.from_coeffs([1, 2, 4], trunc=3)
    assert not _agree("x", 2, a, b).passed
    assert _agree("x", 1, a, b).passed
    with pytest.raises(TruncationTooShallow):
        _agree("x", 5, a, b)
