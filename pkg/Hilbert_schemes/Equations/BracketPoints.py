import itertools
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Mapping, Sequence

import sympy

from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.GradingCore.Gradings import Degree, Exponent, lex_sorted
from Hilbert_schemes.Symbolic.Brackets import SymVar, permutation_sign

logger = logging.getLogger(__name__)


def fixed_point(standard: Mapping[Degree, Sequence[Exponent]]) -> Dict[SymVar, int]:
    """Bracket values of a monomial ideal: [St_a] = 1, every other bracket 0."""
    values = defaultdict(int)
    for a, monomials in standard.items():
        values[SymVar.bracket(tuple(a), lex_sorted(tuple(m) for m in monomials))] = 1
    return values


def _monomial_value(m: Exponent, point: Sequence) -> sympy.Expr:
    value = sympy.Integer(1)
    for c, e in zip(point, m):
        value *= sympy.sympify(c) ** e
    return value


class PointBrackets(dict):
    """Brackets of the ideal of finitely many points, computed on demand.

    [m1..mk] = det(m_j(p_i)). Missing keys are evaluated, so the mapping can
    be handed straight to SparsePoly.evaluate.
    """

    def __init__(self, points: Sequence[Sequence]):
        super().__init__()
        self.points = [tuple(p) for p in points]

    def __missing__(self, v: SymVar) -> Fraction:
        _, monomials = v.key
        if len(monomials) != len(self.points):
            raise ProblemValidationError("bracket size differs from the number of points", bracket=v.label())
        M = sympy.Matrix([[_monomial_value(m, p) for m in monomials] for p in self.points])
        det = sympy.nsimplify(M.det())
        value = Fraction(int(det.p), int(det.q))
        self[v] = value
        return value


def points_brackets(points: Sequence[Sequence]) -> PointBrackets:
    return PointBrackets(points)


class StiefelPointBrackets(dict):
    """Brackets of the kernel rows of an evaluation matrix.

    Omega is the nullspace basis of the point evaluation on `monomials`;
    [B] = sign(X minus B followed by B) * det Omega[:, X minus B].
    """

    def __init__(self, points: Sequence[Sequence], monomials: Sequence[Exponent]):
        super().__init__()
        self.monomials = lex_sorted(tuple(m) for m in monomials)
        evaluation = sympy.Matrix([[_monomial_value(m, p) for m in self.monomials] for p in points])
        null = evaluation.nullspace()
        self.omega = sympy.Matrix.hstack(*null).T if null else sympy.zeros(0, len(self.monomials))

    def stiefel_values(self) -> Dict[SymVar, Fraction]:
        out = {}
        for k, j in itertools.product(range(self.omega.rows), range(self.omega.cols)):
            entry = sympy.nsimplify(self.omega[k, j])
            out[SymVar.stiefel(k, self.monomials[j])] = Fraction(int(entry.p), int(entry.q))
        return out

    def __missing__(self, v: SymVar) -> Fraction:
        _, chosen = v.key
        chosen = set(chosen)
        positions = list(range(len(self.monomials)))
        complement = [j for j in positions if self.monomials[j] not in chosen]
        inside = [j for j in positions if self.monomials[j] in chosen]
        if len(complement) != self.omega.rows:
            raise ProblemValidationError("bracket size does not match the Stiefel matrix", bracket=v.label())
        sign = permutation_sign(complement + inside)
        det = sympy.nsimplify(self.omega[:, complement].det()) if complement else sympy.Integer(1)
        value = sign * Fraction(int(det.p), int(det.q))
        self[v] = value
        return value
