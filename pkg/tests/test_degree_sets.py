import pytest

from Hilbert_schemes.Exceptions import IterationCapExceeded
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec
from Hilbert_schemes.GradingCore.Gradings import Grading
from Hilbert_schemes.Settings import Caps
from Hilbert_schemes.Supportive.DegreeSets import (Flag, SyzygyMode, check_conditions, compute_supportive,
                                                   compute_very_supportive, seed_degrees)


def negative_z():
    return Grading.from_columns([[1], [1], [-1]], 1)


def test_negative_weight_case_is_very_supportive():
    report = check_conditions(negative_z(), HilbertSpec.constant_on_semigroup(2), [(0,), (1,), (2,)])
    assert (report.g, report.h, report.h_prime, report.s) == (Flag.PASS,) * 4
    assert report.candidates == 8
    assert report.is_very_supportive()


def test_sufficient_mode_is_stricter():
    # <x^2 z, y^2, y z> has a redundant pair whose lcm sits in degree 3
    report = check_conditions(negative_z(), HilbertSpec.constant_on_semigroup(2), [(0,), (1,), (2,)],
                              SyzygyMode.SUFFICIENT)
    assert report.s == Flag.FAIL
    assert report.is_supportive()
    assert any(w.condition == "s" for w in report.witnesses)


def test_supportive_iteration_on_projective_line():
    result = compute_supportive(Grading.standard(2), HilbertSpec.constant_on_semigroup(1))
    assert result.D == ((0,), (1,))
    assert result.rounds == 2
    assert sorted(I.generators for I in result.ideals) == [((0, 1),), ((1, 0),)]


def test_very_supportive_contains_supportive():
    h = HilbertSpec.constant_on_semigroup(1)
    base = compute_supportive(Grading.standard(2), h)
    very = compute_very_supportive(Grading.standard(2), h)
    assert set(base.D) <= set(very.D)
    assert very.rounds == base.rounds + 1


def test_failing_degree_set_reports_witnesses():
    report = check_conditions(Grading.standard(2), HilbertSpec.constant_on_semigroup(1), [(0,)])
    assert report.h == Flag.FAIL
    assert report.h_prime == Flag.FAIL
    assert report.g == Flag.FAIL
    assert not report.is_supportive()
    witness = next(w for w in report.witnesses if w.condition == "h_prime")
    assert witness.degree == [1] and witness.value == "2" and witness.expected == 1


def test_weighted_line_is_settled_by_its_graver_degree():
    grading = Grading.from_columns([[1], [2]], 1)
    h = HilbertSpec.constant_on_semigroup(1)
    result = compute_supportive(grading, h, seed=[(2,)])
    assert result.D == ((2,),)
    report = check_conditions(grading, h, result.D)
    assert report.g == Flag.PASS and report.h_prime == Flag.PASS


def test_caps_leave_conditions_unknown():
    report = check_conditions(Grading.standard(2), HilbertSpec.constant_on_semigroup(1), [(0,), (1,), (2,), (3,)],
                              caps=Caps(max_branches=1))
    assert (report.g, report.h, report.h_prime, report.s) == (Flag.UNKNOWN,) * 4
    assert report.notes


def test_fiber_cap_during_witness_search_leaves_h_unknown():
    h = HilbertSpec.from_mapping({(0,): 1, (1,): 3, (2,): 6})
    report = check_conditions(Grading.standard(3), h, [(1,)], caps=Caps(max_monomials=5))
    assert report.h == Flag.UNKNOWN
    assert report.h_prime == Flag.UNKNOWN
    assert not report.is_supportive()
    assert any("SEARCH_CAP" in note for note in report.notes)


def test_iteration_cap():
    with pytest.raises(IterationCapExceeded):
        compute_supportive(Grading.standard(2), HilbertSpec.constant_on_semigroup(1), caps=Caps(cap_iter=1))


def test_seed_degrees_for_tables():
    h = HilbertSpec.from_mapping({(0,): 1, (1,): 1})
    assert seed_degrees(Grading.standard(2), h) == {(0,), (1,), (2,)}
    assert seed_degrees(Grading.standard(2), HilbertSpec.constant_on_semigroup(1)) == {(0,)}
