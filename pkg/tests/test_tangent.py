import pytest

from Hilbert_schemes.Exceptions import InfiniteDimension, ProblemValidationError, UnboundedFiber
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec, enumerate_admissible, enumerate_on
from Hilbert_schemes.GradingCore.Gradings import FiberBox, Grading
from Hilbert_schemes.Monomials.MonomialIdeals import MonomialIdeal, minimalize
from Hilbert_schemes.Tangent.TangentSpace import TangentProblem, tangent_dimension

TWO_LINES_TABLE = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2, (2, 0): 1, (2, 1): 1, (1, 2): 1, (2, 2): 1}


@pytest.fixture(scope="module")
def negative_weight():
    grading = Grading.from_columns([[1], [1], [-1]], 1)
    h = HilbertSpec.constant_on_semigroup(2)
    return grading, h, enumerate_on(grading, h, [(0,), (1,), (2,)])


def test_negative_weight_points_are_four_dimensional(negative_weight):
    grading, h, ideals = negative_weight
    assert len(ideals) == 8
    assert {tangent_dimension(TangentProblem(I, grading, h)).dimension for I in ideals} == {4}


def test_single_point_by_hand(negative_weight):
    grading, h, _ = negative_weight
    result = tangent_dimension(TangentProblem(minimalize([(2, 0, 1), (1, 1, 0), (0, 1, 1)], 3), grading, h))
    assert result.unknowns == 6
    assert result.rank == 2
    assert result.dimension == 4


def test_mirror_symmetry(negative_weight):
    grading, h, ideals = negative_weight
    for I in ideals:
        mirrored = minimalize([(g[1], g[0], g[2]) for g in I.generators], 3)
        assert (tangent_dimension(TangentProblem(I, grading, h)).dimension
                == tangent_dimension(TangentProblem(mirrored, grading, h)).dimension)


def test_projective_line():
    grading = Grading.standard(2)
    for generator in [(1, 0), (0, 1)]:
        assert tangent_dimension(TangentProblem(minimalize([generator], 2), grading)).dimension == 1


def test_cyclic_grading():
    grading = Grading.from_columns([[1], [1]], 0, [2])
    h = HilbertSpec.from_mapping({(0,): 1, (1,): 1})
    ideals = enumerate_on(grading, h, [(0,), (1,)])
    assert [tangent_dimension(TangentProblem(I, grading, h)).dimension for I in ideals] == [2, 2]


def test_two_lines():
    grading = Grading.from_columns([[1, 0], [1, 1], [0, 1]], 2)
    h = HilbertSpec.from_mapping(TWO_LINES_TABLE)
    ideals = enumerate_admissible(grading, h)
    dims = sorted(tangent_dimension(TangentProblem(I, grading, h)).dimension for I in ideals)
    assert dims == [1, 1, 2]


def test_variable_count_must_agree():
    with pytest.raises(ProblemValidationError):
        TangentProblem(MonomialIdeal.unit(3), Grading.standard(2))


def test_box_covering_the_standard_sets(negative_weight):
    grading, h, _ = negative_weight
    I = minimalize([(2, 0, 1), (1, 1, 0), (0, 1, 1)], 3)
    assert tangent_dimension(TangentProblem(I, grading, h), FiberBox((3, 3, 3))).dimension == 4


def test_box_too_small_for_a_generator_degree(negative_weight):
    grading, h, _ = negative_weight
    I = minimalize([(2, 0, 1), (1, 1, 0), (0, 1, 1)], 3)
    # x and y are standard in the degree of x^2 z
    with pytest.raises(UnboundedFiber):
        tangent_dimension(TangentProblem(I, grading, h), FiberBox((0, 0, 0)))


def test_infinite_standard_set_in_a_generator_degree():
    grading = Grading.from_columns([[1], [1], [-1]], 1)
    I = minimalize([(0, 1, 0)], 3)
    with pytest.raises(InfiniteDimension):
        tangent_dimension(TangentProblem(I, grading), FiberBox((2, 2, 2)))
