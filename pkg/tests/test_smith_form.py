import numpy as np

from Hilbert_schemes.GradingCore.SmithForm import invariant_factors, is_surjective, kernel, normal_form


def test_normal_form_reassembles():
    A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
    S, D, T, Sinv, Tinv = normal_form(A)
    assert (S.dot(D).dot(T) == A).all()
    assert all(D[i, j] == 0 for i in range(3) for j in range(3) if i != j)


def test_normal_form_tracks_inverses():
    A = np.array([[3, 5, 7], [4, -2, 6]], dtype=object)
    form = normal_form(A)
    assert (form.S.dot(form.Sinv) == np.eye(2, dtype=object)).all()
    assert (form.T.dot(form.Tinv) == np.eye(3, dtype=object)).all()
    assert (form.Sinv.dot(A).dot(form.Tinv) == form.D).all()


def test_normal_form_of_zero_matrix():
    form = normal_form(np.zeros((2, 3), dtype=object))
    assert not form.D.any()
    assert kernel(np.zeros((2, 3), dtype=object)).shape == (3, 3)


def test_kernel_of_weight_vector():
    K = kernel(np.array([[1, 2]], dtype=object))
    assert K.shape == (2, 1)
    assert tuple(abs(v) for v in K[:, 0]) == (2, 1)
    assert np.array([[1, 2]], dtype=object).dot(K)[0, 0] == 0


def test_kernel_has_full_rank():
    A = np.array([[1, 1, 1, 1], [0, 1, 2, 3]], dtype=object)
    K = kernel(A)
    assert K.shape == (4, 2)
    assert not A.dot(K).any()


def test_invariant_factors_multiply_to_index():
    factors = invariant_factors(np.array([[2, 0], [0, 3]], dtype=object))
    assert factors[0] * factors[1] == 6
    assert invariant_factors(np.array([[4, 6]], dtype=object)) == [2]


def test_surjectivity():
    assert is_surjective(np.array([[1, 1]], dtype=object))
    assert not is_surjective(np.array([[2, 2]], dtype=object))
    assert is_surjective(np.array([[2, 3]], dtype=object))
