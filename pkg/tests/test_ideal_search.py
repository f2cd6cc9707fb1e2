import pytest

from Hilbert_schemes.Exceptions import InternalAssertion, ProblemValidationError, SearchCapExceeded
from Hilbert_schemes.Enumeration.IdealSearch import (HilbertSpec, TailKind, assert_antichain, enumerate_admissible,
                                                     enumerate_on, processing_order)
from Hilbert_schemes.GradingCore.Gradings import Grading
from Hilbert_schemes.Monomials.MonomialIdeals import hilbert_value, minimalize
from Hilbert_schemes.Settings import Caps

NEGATIVE_Z_IDEALS = [
    {(2, 0, 2), (0, 1, 0)},
    {(2, 0, 0), (0, 1, 1)},
    {(2, 0, 1), (1, 1, 0), (0, 1, 1)},
    {(2, 0, 1), (0, 2, 0), (0, 1, 1)},
    {(0, 2, 2), (1, 0, 0)},
    {(0, 2, 0), (1, 0, 1)},
    {(0, 2, 1), (1, 1, 0), (1, 0, 1)},
    {(0, 2, 1), (2, 0, 0), (1, 0, 1)},
]

TWO_LINES_TABLE = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2, (2, 0): 1, (2, 1): 1, (1, 2): 1, (2, 2): 1}


def generator_sets(ideals):
    return sorted(frozenset(I.generators) for I in ideals)


def test_negative_weight_case_has_eight_ideals():
    grading = Grading.from_columns([[1], [1], [-1]], 1)
    ideals = enumerate_on(grading, HilbertSpec.constant_on_semigroup(2), [(0,), (1,), (2,)])
    assert generator_sets(ideals) == sorted(frozenset(s) for s in NEGATIVE_Z_IDEALS)


def test_projective_line():
    ideals = enumerate_on(Grading.standard(2), HilbertSpec.constant_on_semigroup(1), [(0,), (1,), (2,), (3,)])
    assert [I.generators for I in ideals] == [((0, 1),), ((1, 0),)]


def test_cyclic_grading_has_two_fixed_points():
    grading = Grading.from_columns([[1], [1]], 0, [2])
    h = HilbertSpec.from_mapping({(0,): 1, (1,): 1})
    ideals = enumerate_on(grading, h, [(0,), (1,)])
    assert generator_sets(ideals) == sorted([frozenset({(2, 0), (0, 1)}), frozenset({(1, 0), (0, 2)})])


def test_two_lines_fixed_points():
    grading = Grading.from_columns([[1, 0], [1, 1], [0, 1]], 2)
    h = HilbertSpec.from_mapping(TWO_LINES_TABLE)
    ideals = enumerate_admissible(grading, h)
    assert len(ideals) == 3
    for I in ideals:
        assert sum(hilbert_value(I, grading, a) for a in TWO_LINES_TABLE) == 9
        for m in [(3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (0, 2, 1), (0, 0, 2)]:
            assert I.contains(m)


def test_enumeration_respects_branch_cap():
    with pytest.raises(SearchCapExceeded):
        enumerate_on(Grading.standard(2), HilbertSpec.constant_on_semigroup(1), [(0,), (1,), (2,), (3,)],
                     Caps(max_branches=1))


def test_antichain_assertion():
    with pytest.raises(InternalAssertion):
        assert_antichain([minimalize([(1, 0)]), minimalize([(2, 0)])])


def test_constant_spec_is_zero_off_the_semigroup():
    h = HilbertSpec.constant_on_semigroup(3)
    assert h.value(Grading.standard(2), (4,)) == 3
    assert h.value(Grading.standard(2), (-1,)) == 0


def test_table_spec():
    h = HilbertSpec.from_mapping({(1,): 2, (0,): 1})
    assert h.tail == TailKind.ZERO_OUTSIDE
    assert h.degrees() == [(0,), (1,)]
    assert h.value(Grading.standard(2), (5,)) == 0
    assert h.to_dict()["table"] == [{"degree": [0], "value": 1}, {"degree": [1], "value": 2}]


def test_negative_values_rejected():
    with pytest.raises(ProblemValidationError):
        HilbertSpec.from_mapping({(0,): -1})


def test_processing_order_uses_weight():
    assert processing_order(Grading.standard(2), [(3,), (1,), (2,)]) == [(1,), (2,), (3,)]
