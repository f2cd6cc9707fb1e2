import pytest

from Hilbert_schemes.Exceptions import InfiniteSet, UnboundedFiber
from Hilbert_schemes.GradingCore.Gradings import FiberBox, Grading
from Hilbert_schemes.Monomials.MonomialIdeals import (INFINITE, MonomialIdeal, hilbert_value, minimal_syzygy_degrees,
                                                      minimalize, pairwise_lcm_degrees, rational_rank,
                                                      standard_monomials)


def negative_z():
    return Grading.from_columns([[1], [1], [-1]], 1)


def test_minimalize_drops_multiples():
    I = minimalize([(2, 0), (3, 1), (0, 1), (1, 1)])
    assert I.generators == ((2, 0), (0, 1))


def test_minimalize_keeps_antichain():
    gens = [(2, 0, 1), (1, 1, 0), (0, 1, 1)]
    assert set(minimalize(gens).generators) == set(gens)


def test_membership():
    I = minimalize([(2, 0), (0, 1)])
    assert I.contains((3, 1))
    assert not I.contains((1, 0))
    assert not MonomialIdeal.zero(2).contains((4, 4))
    assert I.is_subideal_of(minimalize([(1, 0), (0, 1)]))


def test_hilbert_value_nonpositive_grading():
    I = minimalize([(2, 0, 2), (0, 1, 0)])
    assert hilbert_value(I, negative_z(), (0,)) == 2
    assert set(standard_monomials(I, negative_z(), (1,))) == {(1, 0, 0), (2, 0, 1)}


def test_hilbert_value_standard():
    g = Grading.standard(2)
    assert standard_monomials(MonomialIdeal.zero(2), g, (1,)) == ((1, 0), (0, 1))
    assert standard_monomials(minimalize([(1, 0), (0, 1)]), g, (1,)) == ()
    assert hilbert_value(minimalize([(1, 0)]), g, (5,)) == 1


def test_infinite_standard_set():
    I = minimalize([(0, 1, 0)])
    assert hilbert_value(I, negative_z(), (0,)) == INFINITE
    with pytest.raises(InfiniteSet):
        standard_monomials(I, negative_z(), (0,))


def test_box_never_truncates_an_infinite_count():
    zero = MonomialIdeal.zero(3)
    assert hilbert_value(zero, negative_z(), (0,)) == INFINITE
    assert hilbert_value(zero, negative_z(), (0,), FiberBox((1, 1, 1))) == INFINITE
    with pytest.raises(InfiniteSet):
        standard_monomials(zero, negative_z(), (0,), FiberBox((1, 1, 1)))


def test_box_covering_the_standard_set_gives_exact_count():
    I = minimalize([(2, 0, 2), (0, 1, 0)])
    box = FiberBox((2, 2, 2))
    assert hilbert_value(I, negative_z(), (0,), box) == 2
    assert standard_monomials(I, negative_z(), (0,), box) == ((1, 0, 1), (0, 0, 0))


def test_box_too_small_for_the_standard_set():
    I = minimalize([(2, 0, 2), (0, 1, 0)])
    # xz is standard in degree 0 but lies outside the box
    with pytest.raises(UnboundedFiber):
        hilbert_value(I, negative_z(), (0,), FiberBox((0, 0, 0)))


def test_box_is_ignored_for_positive_gradings():
    g = Grading.standard(2)
    assert hilbert_value(MonomialIdeal.zero(2), g, (2,), FiberBox((1, 1))) == 3
    assert standard_monomials(minimalize([(0, 1)]), g, (2,), FiberBox((1, 1))) == ((2, 0),)


def test_syzygy_degrees():
    g = Grading.standard(3)
    I = minimalize([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert pairwise_lcm_degrees(I, g) == [(2,)]
    assert minimal_syzygy_degrees(I, g) == [(2,)]


def test_minimal_syzygies_skip_redundant_pairs():
    # x^2, xy, y^2: the pair (x^2, y^2) has lcm x^2y^2 but is not a minimal syzygy
    g = Grading.from_columns([[1, 0], [0, 1]], 2)
    I = minimalize([(2, 0), (1, 1), (0, 2)])
    assert (2, 2) in pairwise_lcm_degrees(I, g)
    assert minimal_syzygy_degrees(I, g) == [(1, 2), (2, 1)]


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]], 2) == 1
    assert rational_rank([], 3) == 0
    assert rational_rank([[1, 0], [0, 1]], 2) == 2
