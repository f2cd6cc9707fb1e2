import pytest

from Hilbert_schemes.Exceptions import CapExceeded, NoRepresentation, ProblemValidationError
from Hilbert_schemes.Grothendieck.Gotzmann import (Flavor, HilbertPolynomial, gotzmann_number,
                                                   grothendieck_equations, hilbert_function_from_polynomial,
                                                   lex_regularity, macaulay_representation, saturated_lex_ideal)
from Hilbert_schemes.GradingCore.Gradings import Grading
from Hilbert_schemes.Settings import Caps


def test_points_in_the_plane():
    g = HilbertPolynomial.constant(2, 3)
    assert macaulay_representation(g) == [0, 0]
    assert gotzmann_number(g) == 2


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_gotzmann_number_matches_lex_regularity(m):
    assert gotzmann_number(HilbertPolynomial.constant(m, 3)) == lex_regularity(saturated_lex_ideal(m, 3))


def test_twisted_cubic_polynomial():
    g = HilbertPolynomial.parse("3*d + 1", 4)
    assert macaulay_representation(g) == [1, 1, 1, 0]
    assert gotzmann_number(g) == 4


def test_line():
    assert gotzmann_number(HilbertPolynomial.parse("d + 1", 3)) == 1


def test_hilbert_function_switches_at_gotzmann_number():
    grading = Grading.standard(3)
    h = hilbert_function_from_polynomial(HilbertPolynomial.constant(2, 3))
    assert [h.value(grading, (d,)) for d in range(4)] == [1, 3, 2, 2]


def test_hilbert_function_follows_polynomial_past_table():
    g = HilbertPolynomial.parse("3*d + 1", 4)
    h = hilbert_function_from_polynomial(g)
    grading = Grading.standard(4)
    for d in range(4, 10):
        assert h.value(grading, (d,)) == 3 * d + 1


def test_hilbert_function_overrides():
    h = hilbert_function_from_polynomial(HilbertPolynomial.constant(2, 3), overrides={1: 2})
    assert h.value(Grading.standard(3), (1,)) == 2


@pytest.mark.parametrize("text", ["d + e", "d +* 2", "x"])
def test_bad_polynomials(text):
    with pytest.raises(ProblemValidationError):
        HilbertPolynomial.parse(text, 3)


@pytest.mark.parametrize("text", ["-d", "d - 5", "-1"])
def test_no_macaulay_representation(text):
    with pytest.raises(NoRepresentation):
        macaulay_representation(HilbertPolynomial.parse(text, 3))


def test_lex_ideal_needs_two_variables():
    with pytest.raises(ProblemValidationError):
        saturated_lex_ideal(2, 1)


def test_bayer_flavor_respects_minor_cap():
    with pytest.raises(CapExceeded):
        grothendieck_equations(HilbertPolynomial.constant(2, 3), Flavor.BAYER, Caps(max_minors=559))


def test_gotzmann_pair_flavor_meta():
    result = grothendieck_equations(HilbertPolynomial.constant(2, 3), Flavor.GOTZMANN_PAIR)
    assert result.meta["flavor"] == "gotzmann-pair"
    assert result.meta["gotzmann_number"] == 2
    assert result.meta["count"] == 600
