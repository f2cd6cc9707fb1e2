from fractions import Fraction

import pytest

from Hilbert_schemes.Exceptions import ShapeMismatch
from Hilbert_schemes.Symbolic.Brackets import (SparsePoly, SymMatrix, SymVar, bracket, minor, permutation_sign)

X2, XY, Y2 = (2, 0), (1, 1), (0, 2)


def var(name):
    return SparsePoly.var(SymVar.param(name))


def test_bracket_sign_and_repeats():
    assert bracket([Y2, X2], (2,)) == -bracket([X2, Y2], (2,))
    assert bracket([X2, X2], (2,)).is_zero()
    assert bracket([], (2,)) == SparsePoly.constant(1)


def test_bracket_is_stored_in_descending_order():
    (v,) = bracket([Y2, XY, X2], (2,)).variables()
    assert v.key[1] == (X2, XY, Y2)


def test_permutation_sign():
    assert permutation_sign([1, 2, 3]) == 1
    assert permutation_sign([2, 1, 3]) == -1
    assert permutation_sign([3, 1, 2]) == 1
    assert permutation_sign([1, 1]) == 0


def test_sparse_arithmetic():
    a, b = var("a"), var("b")
    assert (a + b) * (a - b) == a ** 2 - b ** 2
    assert (a - a).is_zero()
    assert (2 * a + 4 * b).normalized() == a + 2 * b
    assert (-(a + b)).normalized() == a + b
    assert (a * b + a).term_count() == 2
    assert (a * b + b * b).is_homogeneous()


def test_evaluate_and_substitute():
    a, b = var("a"), var("b")
    p = a * a - 3 * b
    assert p.evaluate({SymVar.param("a"): Fraction(1, 2), SymVar.param("b"): 1}) == Fraction(-11, 4)
    assert p.substitute({SymVar.param("a"): b}) == b * b - 3 * b


def test_small_minors():
    one, zero = SparsePoly.constant(1), SparsePoly.zero()
    identity = SymMatrix([[one, zero], [zero, one]])
    assert minor(identity, [0, 1], [0, 1]) == one
    assert minor(identity, [0, 1], [1, 0]) == -one
    c = var("c")
    assert minor(SymMatrix([[c]]), [0], [0]) == c


def test_symbolic_determinant():
    a, b, c, d = var("a"), var("b"), var("c"), var("d")
    M = SymMatrix([[a, b], [c, d]])
    assert minor(M, [0, 1], [0, 1]) == a * d - b * c


def test_shape_checks():
    one = SparsePoly.constant(1)
    with pytest.raises(ShapeMismatch):
        SymMatrix([[one, one], [one]])
    with pytest.raises(ShapeMismatch):
        minor(SymMatrix([[one, one]]), [0], [0, 1])
