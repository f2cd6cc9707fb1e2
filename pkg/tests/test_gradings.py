import itertools
import random

import numpy as np
import pytest

from Hilbert_schemes.Exceptions import DimensionMismatch, ProblemValidationError, UnboundedFiber
from Hilbert_schemes.GradingCore.Gradings import (FiberBox, Grading, deg_of, degree_frontier, fiber,
                                                  is_positive, semigroup_contains)


def two_lines_grading():
    return Grading.from_columns([[1, 0], [1, 1], [0, 1]], 2)


def test_degree_of_monomial():
    assert deg_of(two_lines_grading(), (1, 1, 1)) == (2, 2)


def test_degree_of_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        deg_of(two_lines_grading(), (1, 1))


def test_positivity():
    assert is_positive(Grading.standard(3))
    assert is_positive(two_lines_grading())
    assert not is_positive(Grading.from_columns([[1], [-1]], 1))
    assert not is_positive(Grading.from_columns([[1], [1]], 0, [2]))


@pytest.mark.parametrize("seed", range(30))
def test_positivity_matches_the_degree_zero_fiber(seed):
    rng = random.Random(seed)
    columns = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(4)]
    grading = Grading.from_columns(columns, 2, check=False)
    # minimal degree-zero monomials have entries bounded by the 2x2 minors, so at most 8
    exponents = np.array(list(itertools.product(range(9), repeat=4)))[1:]
    degrees = exponents @ np.array(columns)
    has_zero_monomial = bool(np.any(np.all(degrees == 0, axis=1)))
    assert is_positive(grading) == (not has_zero_monomial)
    if not has_zero_monomial:
        assert fiber(grading, (0, 0)).monomials == ((0, 0, 0, 0),)


def test_standard_fibers():
    g = Grading.standard(3)
    assert len(fiber(g, (2,)).monomials) == 6
    assert len(fiber(g, (3,)).monomials) == 10
    assert fiber(g, (-1,)).monomials == ()


def test_fiber_is_lex_descending():
    monomials = fiber(Grading.standard(2), (2,)).monomials
    assert monomials == ((2, 0), (1, 1), (0, 2))


def test_nonpositive_fiber_needs_a_box():
    g = Grading.from_columns([[1], [-1]], 1)
    with pytest.raises(UnboundedFiber):
        fiber(g, (0,))
    boxed = fiber(g, (0,), FiberBox.parse("0:2,1:2", 2))
    assert set(boxed.monomials) == {(0, 0), (1, 1), (2, 2)}
    assert not boxed.exhaustive


def test_semigroup_membership():
    g = Grading.from_columns([[1, 0], [1, 0], [0, 1], [2, 1]], 2)
    assert semigroup_contains(g, (0, 2))
    assert not semigroup_contains(g, (-1, 0))


def test_torsion_degrees_reduce():
    g = Grading.from_columns([[1], [1]], 0, [2])
    assert g.reduce((3,)) == (1,)
    assert deg_of(g, (1, 1)) == (0,)


def test_malformed_columns():
    with pytest.raises(DimensionMismatch):
        Grading.from_columns([[1], [1, 0]], 1)
    with pytest.raises(ProblemValidationError):
        Grading.from_columns([[2], [2]], 1)


def test_box_parsing():
    box = FiberBox.parse("0:3, 2:1", 3)
    assert box.bounds == (3, None, 1)
    assert not box.is_finite()
    with pytest.raises(ProblemValidationError):
        FiberBox.parse("5:1", 3)
    with pytest.raises(ProblemValidationError):
        FiberBox.parse("0-1", 3)


def test_degree_frontier_starts_at_zero():
    frontier = degree_frontier(Grading.standard(2), 4)
    assert frontier == ((0,), (1,), (2,), (3,))
