"""Integer diagonalization of degree matrices over numpy object arrays (exact, arbitrary precision)."""
from typing import List, NamedTuple

import numpy as np


class Diagonalization(NamedTuple):
    """A == S @ D @ T with S, T unimodular and D diagonal."""
    S: np.ndarray
    D: np.ndarray
    T: np.ndarray
    Sinv: np.ndarray
    Tinv: np.ndarray


class _Reducer:
    """Elementary row and column moves on D, mirrored into S, T and their inverses."""

    def __init__(self, A: np.ndarray):
        rows, cols = A.shape
        self.D = A.copy()
        self.S, self.Sinv = np.eye(rows, dtype=object), np.eye(rows, dtype=object)
        self.T, self.Tinv = np.eye(cols, dtype=object), np.eye(cols, dtype=object)

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.D[[i, j]] = self.D[[j, i]]
        self.S[:, [i, j]] = self.S[:, [j, i]]
        self.Sinv[[i, j]] = self.Sinv[[j, i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        self.D[:, [i, j]] = self.D[:, [j, i]]
        self.T[[i, j]] = self.T[[j, i]]
        self.Tinv[:, [i, j]] = self.Tinv[:, [j, i]]

    def add_row(self, target: int, source: int, q: int) -> None:
        # row_target += q * row_source
        self.D[target] += q * self.D[source]
        self.S[:, source] -= q * self.S[:, target]
        self.Sinv[target] += q * self.Sinv[source]

    def add_col(self, target: int, source: int, q: int) -> None:
        # col_target += q * col_source
        self.D[:, target] += q * self.D[:, source]
        self.T[source] -= q * self.T[target]
        self.Tinv[:, target] += q * self.Tinv[:, source]

    def smallest_entry(self, k: int):
        rows, cols = self.D.shape
        entries = [(abs(self.D[i, j]), i, j) for i in range(k, rows) for j in range(k, cols) if self.D[i, j] != 0]
        return min(entries) if entries else None

    def settle_pivot(self, k: int) -> bool:
        """Reduces row and column k by the pivot; True once both are clear."""
        rows, cols = self.D.shape
        p = self.D[k, k]
        clear = True
        for i in range(k + 1, rows):
            q = self.D[i, k] // p
            if q:
                self.add_row(i, k, -q)
            clear = clear and self.D[i, k] == 0
        for j in range(k + 1, cols):
            q = self.D[k, j] // p
            if q:
                self.add_col(j, k, -q)
            clear = clear and self.D[k, j] == 0
        return clear


def normal_form(A) -> Diagonalization:
    """Diagonalizes A by pivoting on the smallest nonzero entry of the trailing block.

    The diagonal is not required to satisfy the Smith divisibility chain; the
    cokernel is still the direct sum of Z/D_ii.
    """
    A = np.array(A, dtype=object)
    r = _Reducer(A)
    for k in range(min(A.shape) if A.size else 0):
        while True:
            pivot = r.smallest_entry(k)
            if pivot is None:
                break
            _, i, j = pivot
            r.swap_rows(k, i)
            r.swap_cols(k, j)
            if r.settle_pivot(k):
                break
        if pivot is None:
            break
    assert (r.S @ r.D @ r.T == A).all()
    return Diagonalization(r.S, r.D, r.T, r.Sinv, r.Tinv)


def _diagonal(D: np.ndarray, length: int) -> List[int]:
    diag = [D[i, i] for i in range(min(D.shape))]
    return diag + [0] * max(0, length - len(diag))


def kernel(A) -> np.ndarray:
    """Columns span the integer null space of A."""
    form = normal_form(A)
    mask = np.array([d == 0 for d in _diagonal(form.D, form.T.shape[0])], dtype=bool)
    return form.Tinv[:, mask]


def invariant_factors(A) -> List[int]:
    """Absolute diagonal entries, zeros padded to the row count."""
    D = normal_form(A).D
    return [abs(d) for d in _diagonal(D, D.shape[0])]


def is_surjective(A) -> bool:
    """True iff the columns of A generate Z^rows."""
    return all(d == 1 for d in invariant_factors(A))
