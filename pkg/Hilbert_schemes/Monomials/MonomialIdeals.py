import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from Hilbert_schemes.Exceptions import DimensionMismatch, InfiniteSet, SearchCapExceeded, UnboundedFiber
from Hilbert_schemes.GradingCore.Gradings import (Degree, Exponent, FiberBox, Grading, _deg, _in_box,
                                                  degree_zero_generators, fiber, fiber_generators, lex_sorted)
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)

INFINITE = float("inf")
HilbertValue = Union[int, float]


def divides(g: Sequence[int], u: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(g, u))


def lcm(u: Sequence[int], v: Sequence[int]) -> Exponent:
    return tuple(max(x, y) for x, y in zip(u, v))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generators, an antichain under divisibility, in lex order."""

    n: int
    generators: Tuple[Exponent, ...]

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, ((0,) * n,))

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def contains(self, m: Sequence[int]) -> bool:
        return any(divides(g, m) for g in self.generators)

    def is_subideal_of(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def to_list(self) -> List[List[int]]:
        return [list(g) for g in self.generators]


def minimalize(monomials: Iterable[Sequence[int]], n: Optional[int] = None) -> MonomialIdeal:
    ms = sorted({tuple(int(e) for e in m) for m in monomials}, key=lambda u: (sum(u), u))
    if n is None:
        if not ms:
            raise DimensionMismatch("cannot infer the variable count of an empty generator set")
        n = len(ms[0])
    keep: List[Exponent] = []
    for u in ms:
        if len(u) != n:
            raise DimensionMismatch(f"monomial has {len(u)} exponents, expected {n}", monomial=u)
        if not any(divides(g, u) for g in keep):
            keep.append(u)
    return MonomialIdeal(n, lex_sorted(keep))


def contains(I: MonomialIdeal, m: Sequence[int]) -> bool:
    return I.contains(m)


# ---------------------------
# Standard monomials and Hilbert values
# ---------------------------
def _standard_set(I: MonomialIdeal, grading: Grading, a: Degree, box: Optional[FiberBox],
                  caps: Caps) -> Optional[Set[Exponent]]:
    """Standard monomials of degree a, or None when there are infinitely many.

    Positive gradings count the whole fiber; a box never truncates the count. Otherwise the
    box only bounds the search, and a standard monomial outside it raises UnboundedFiber.
    """
    if grading.is_positive():
        return {u for u in fiber(grading, a, caps=caps).monomials if not I.contains(u)}

    moves = degree_zero_generators(grading, caps)
    seeds = [f for f in fiber_generators(grading, a, caps) if not I.contains(f)]
    horizon = max([1] + [sum(g) for g in I.generators])
    for f in seeds:
        for g in moves:
            # a generator missing f + K*g misses f + k*g for every k
            if not I.contains(tuple(x + horizon * y for x, y in zip(f, g))):
                logger.debug("degree %s: %s recurs along %s", a, f, g)
                return None

    bounded = box is not None and any(b is not None for b in box.bounds)
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        u = queue.popleft()
        if bounded and not _in_box(u, box):
            raise UnboundedFiber("standard monomials of this degree leave the box", degree=a, monomial=u,
                                 bounds=box.bounds)
        for g in moves:
            v = tuple(x + y for x, y in zip(u, g))
            if v not in seen and not I.contains(v):
                seen.add(v)
                queue.append(v)
                if len(seen) > caps.max_monomials:
                    raise SearchCapExceeded("standard set exceeds max_monomials", degree=a)
    return seen


def hilbert_value(I: MonomialIdeal, grading: Grading, a: Sequence[int], box: Optional[FiberBox] = None,
                  caps: Caps = DEFAULT_CAPS) -> HilbertValue:
    """Number of standard monomials of degree a, or INFINITE."""
    a = grading.reduce(a)
    standard = _standard_set(I, grading, a, box, caps)
    return INFINITE if standard is None else len(standard)


def standard_monomials(I: MonomialIdeal, grading: Grading, a: Sequence[int], box: Optional[FiberBox] = None,
                       caps: Caps = DEFAULT_CAPS) -> Tuple[Exponent, ...]:
    a = grading.reduce(a)
    standard = _standard_set(I, grading, a, box, caps)
    if standard is None:
        raise InfiniteSet("infinitely many standard monomials", degree=a, ideal=I.generators)
    return lex_sorted(standard)


# ---------------------------
# Syzygy degrees
# ---------------------------
def pairwise_lcm_degrees(I: MonomialIdeal, grading: Grading) -> List[Degree]:
    return sorted({_deg(grading, lcm(g, h)) for g, h in itertools.combinations(I.generators, 2)})


def rational_rank(rows: Sequence[Sequence[int]], columns: int) -> int:
    if not rows or not columns:
        return 0
    matrix = DomainMatrix([[QQ(v) for v in row] for row in rows], (len(rows), columns), QQ)
    return matrix.rank()


def minimal_syzygy_multidegrees(I: MonomialIdeal) -> List[Exponent]:
    """Exponent vectors carrying a minimal first syzygy of I.

    For a pair lcm b the Taylor strand in multidegree b has the pairs and
    triples with lcm exactly b; the Betti number is #pairs - rank(boundary).
    """
    gens = I.generators
    strands = {}
    for i, j in itertools.combinations(range(len(gens)), 2):
        strands.setdefault(lcm(gens[i], gens[j]), []).append((i, j))
    out = []
    for b, pairs in sorted(strands.items()):
        index = {p: r for r, p in enumerate(pairs)}
        faces = [s for s in itertools.combinations(range(len(gens)), 3)
                 if lcm(lcm(gens[s[0]], gens[s[1]]), gens[s[2]]) == b]
        rows = [[0] * len(faces) for _ in pairs]
        for c, (i, j, k) in enumerate(faces):
            for sign, face in ((1, (j, k)), (-1, (i, k)), (1, (i, j))):
                if face in index:
                    rows[index[face]][c] = sign
        betti = len(pairs) - rational_rank(rows, len(faces))
        if betti > 0:
            out.append(b)
    return out


def minimal_syzygy_degrees(I: MonomialIdeal, grading: Grading) -> List[Degree]:
    return sorted({_deg(grading, b) for b in minimal_syzygy_multidegrees(I)})
