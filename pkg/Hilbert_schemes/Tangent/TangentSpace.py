import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

from Hilbert_schemes.Exceptions import InfiniteDimension, InfiniteSet, ProblemValidationError
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec
from Hilbert_schemes.GradingCore.Gradings import Exponent, FiberBox, Grading, _deg
from Hilbert_schemes.Monomials.MonomialIdeals import MonomialIdeal, hilbert_value, lcm, rational_rank, standard_monomials
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TangentProblem:
    ideal: MonomialIdeal
    grading: Grading
    h: Optional[HilbertSpec] = None

    def __post_init__(self):
        if self.ideal.n != self.grading.n:
            raise ProblemValidationError("ideal and grading disagree on the number of variables",
                                         ideal=self.ideal.n, grading=self.grading.n)


class TangentResult(NamedTuple):
    dimension: int
    unknowns: int
    constraints: int
    rank: int


def tangent_dimension(problem: TangentProblem, box: Optional[FiberBox] = None,
                      caps: Caps = DEFAULT_CAPS) -> TangentResult:
    """dim of the degree-zero homomorphisms I -> S/I at a monomial ideal.

    Unknowns are the coordinates of phi(g) on the standard monomials of deg g;
    each generator pair contributes (L/g) phi(g) - (L/g') phi(g') = 0 in (S/I)_{deg L}.
    """
    I, grading = problem.ideal, problem.grading
    gens = I.generators
    if problem.h is not None:
        for g in gens:
            a = _deg(grading, g)
            if hilbert_value(I, grading, a, box, caps) != problem.h.value(grading, a, caps):
                logger.warning("ideal disagrees with h in degree %s", a)

    columns: Dict[Tuple[int, Exponent], int] = {}
    for i, g in enumerate(gens):
        try:
            standard = standard_monomials(I, grading, _deg(grading, g), box, caps)
        except InfiniteSet:
            raise InfiniteDimension("infinitely many standard monomials in a generator degree", generator=g)
        for s in standard:
            columns[(i, s)] = len(columns)

    rows: List[List[int]] = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        L = lcm(gens[i], gens[j])
        equations: Dict[Exponent, List[int]] = {}
        for (k, s), col in columns.items():
            if k not in (i, j):
                continue
            t = tuple(x - y + z for x, y, z in zip(L, gens[k], s))
            if I.contains(t):
                continue
            row = equations.setdefault(t, [0] * len(columns))
            row[col] += 1 if k == i else -1
        rows.extend(row for row in equations.values() if any(row))

    rank = rational_rank(rows, len(columns))
    result = TangentResult(len(columns) - rank, len(columns), len(rows), rank)
    logger.info("tangent space at %s: dim %d (%d unknowns, %d constraints)", I.to_list(), result.dimension,
                result.unknowns, result.constraints)
    return result
