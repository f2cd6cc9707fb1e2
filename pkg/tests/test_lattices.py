import itertools

import pytest

from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.GradingCore.Gradings import Grading, deg_of
from Hilbert_schemes.Toric.Lattices import (Binomial, conformal_le, graver_basis, graver_degrees, is_integral_degree,
                                            is_prime_degree, is_unimodular, kernel_lattice, supernormal_on)

GRID = [(a, b) for a in range(7) for b in range(7)]


@pytest.fixture
def closing_grading():
    return Grading.from_columns([[1, 0], [1, 0], [0, 1], [2, 1]], 2)


def test_graver_basis_of_weighted_line():
    grading = Grading.from_columns([[1], [2]], 1)
    gb = graver_basis(kernel_lattice(grading))
    assert [b.u for b in gb] == [(2, -1)]
    assert graver_degrees(grading, gb) == [(2,)]


def test_graver_basis_of_standard_line():
    gb = graver_basis(kernel_lattice(Grading.standard(2)))
    assert [b.u for b in gb] == [(1, -1)]


def test_graver_basis_with_a_negative_weight():
    gb = graver_basis(kernel_lattice(Grading.from_columns([[1], [1], [-1]], 1)))
    assert {b.u for b in gb} == {(1, 0, 1), (0, 1, 1), (1, -1, 0)}


def test_torsion_lattice_has_index_two():
    lattice = kernel_lattice(Grading.from_columns([[1], [1]], 0, [2]))
    assert len(lattice.basis) == 2
    (a, b), (c, d) = lattice.basis
    assert abs(a * d - b * c) == 2


GRAVER_CASES = [
    ([[1], [2]], 1, ()),
    ([[1], [1], [-1]], 1, ()),
    ([[1], [2], [3]], 1, ()),
    ([[1, 0], [1, 1], [0, 1]], 2, ()),
    ([[1, 0], [1, 0], [0, 1], [2, 1]], 2, ()),
    ([[1, 0], [0, 1], [1, 1], [1, -1]], 2, ()),
    ([[1], [1]], 0, (2,)),
    ([[1], [3]], 0, (4,)),
]


def up_to_sign(u):
    return max(u, tuple(-x for x in u))


def minimal_lattice_vectors(grading, radius):
    """Conformally minimal nonzero kernel vectors with |u|_1 <= radius, by exhaustion."""
    ball = [u for u in itertools.product(range(-radius, radius + 1), repeat=grading.n)
            if any(u) and sum(map(abs, u)) <= radius]
    kernel = [u for u in ball if deg_of(grading, Binomial(u).plus) == deg_of(grading, Binomial(u).minus)]
    return {up_to_sign(u) for u in kernel if not any(v != u and conformal_le(v, u) for v in kernel)}


@pytest.mark.parametrize("columns,free_rank,moduli", GRAVER_CASES)
def test_graver_basis_matches_exhaustive_search(columns, free_rank, moduli):
    grading = Grading.from_columns(columns, free_rank, moduli)
    lattice = kernel_lattice(grading)
    assert len(lattice.basis) <= 2
    found = {up_to_sign(b.u) for b in graver_basis(lattice) if sum(map(abs, b.u)) <= 6}
    assert found == minimal_lattice_vectors(grading, 6)


def test_graver_elements_are_in_the_kernel(closing_grading):
    for b in graver_basis(kernel_lattice(closing_grading)):
        assert deg_of(closing_grading, b.plus) == deg_of(closing_grading, b.minus)


def test_binomial_parts():
    b = Binomial((2, -1, 0))
    assert b.plus == (2, 0, 0)
    assert b.minus == (0, 1, 0)


def test_conformal_order():
    assert conformal_le((1, 0, -1), (2, 1, -1))
    assert not conformal_le((1, -1), (2, 1))
    assert not conformal_le((3, 0), (2, 0))


def test_prime_degrees(closing_grading):
    for a, b in GRID:
        assert is_prime_degree(closing_grading, (a, b)) == (a >= 2 * b)


def test_integral_degrees(closing_grading):
    for a, b in GRID:
        assert is_integral_degree(closing_grading, (a, b)) == (a >= 2 * b or a % 2 == 0)


def test_not_unimodular(closing_grading):
    assert not is_unimodular(closing_grading)


def test_standard_grading_is_unimodular():
    assert is_unimodular(Grading.standard(3))


def test_no_supernormal_violations(closing_grading):
    entries = supernormal_on(closing_grading, GRID)
    assert len(entries) == 49
    assert not any(e.violation for e in entries)


def test_integrality_needs_free_part():
    with pytest.raises(ProblemValidationError):
        is_integral_degree(Grading.from_columns([[1], [1]], 0, [2]), (0,))
