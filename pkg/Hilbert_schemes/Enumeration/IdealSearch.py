import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from Hilbert_schemes.Exceptions import InternalAssertion, ProblemValidationError, SearchCapExceeded
from Hilbert_schemes.GradingCore.Gradings import (Degree, Exponent, Grading, degree_zero_generators, fiber,
                                                  fiber_generators, lex_sorted, semigroup_contains)
from Hilbert_schemes.Monomials.MonomialIdeals import MonomialIdeal, hilbert_value, minimalize
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)


class TailKind(str, Enum):
    ZERO_OUTSIDE = "zero_outside"
    CONSTANT = "constant"
    POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class HilbertSpec:
    """h: A -> N as a finite table plus a rule for the degrees off the table.

    CONSTANT(c) is c on the degree semigroup and 0 elsewhere. POLYNOMIAL is
    the standard-grading rule: C(n+d-1, d) below the threshold, g(d) from it on.
    """

    table: Tuple[Tuple[Degree, int], ...]
    tail: TailKind = TailKind.ZERO_OUTSIDE
    constant: int = 0
    coefficients: Tuple[Fraction, ...] = ()
    threshold: int = 0
    _lookup: Dict[Degree, int] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        lookup = {}
        for a, v in self.table:
            if v < 0:
                raise ProblemValidationError("Hilbert function values must be nonnegative", degree=a)
            lookup[tuple(a)] = int(v)
        if self.tail == TailKind.CONSTANT and self.constant < 0:
            raise ProblemValidationError("constant tail must be nonnegative", constant=self.constant)
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_mapping(cls, values: Dict[Sequence[int], int], **tail) -> "HilbertSpec":
        table = tuple(sorted((tuple(int(x) for x in a), int(v)) for a, v in values.items()))
        return cls(table, **tail)

    @classmethod
    def constant_on_semigroup(cls, c: int) -> "HilbertSpec":
        return cls((), TailKind.CONSTANT, constant=c)

    def check(self, grading: Grading) -> None:
        for a, _ in self.table:
            grading.reduce(a)
        if self.tail == TailKind.POLYNOMIAL:
            if grading.free_rank != 1 or grading.moduli or any(col != (1,) for col in grading.columns):
                raise ProblemValidationError("polynomial tails need the standard grading")

    def value(self, grading: Grading, a: Sequence[int], caps: Caps = DEFAULT_CAPS) -> int:
        a = grading.reduce(a)
        if a in self._lookup:
            return self._lookup[a]
        if self.tail == TailKind.CONSTANT:
            return self.constant if semigroup_contains(grading, a, caps=caps) else 0
        if self.tail == TailKind.POLYNOMIAL:
            d = a[0]
            if d < 0:
                return 0
            if d < self.threshold:
                return comb(grading.n + d - 1, d)
            value = sum((c * d ** k for k, c in enumerate(self.coefficients)), Fraction(0))
            if value.denominator != 1 or value < 0:
                raise ProblemValidationError("polynomial tail is not a nonnegative integer", degree=a)
            return int(value)
        return 0

    def degrees(self) -> List[Degree]:
        return sorted(self._lookup)

    def support(self) -> List[Degree]:
        return sorted(a for a, v in self._lookup.items() if v > 0)

    def to_dict(self) -> dict:
        out = {"table": [{"degree": list(a), "value": v} for a, v in self.table], "tail": self.tail.value}
        if self.tail == TailKind.CONSTANT:
            out["constant"] = self.constant
        if self.tail == TailKind.POLYNOMIAL:
            out["coefficients"] = [str(c) for c in self.coefficients]
            out["threshold"] = self.threshold
        return out


def processing_order(grading: Grading, D: Sequence[Sequence[int]]) -> List[Degree]:
    """Increasing certified weight when there is one, lex otherwise."""
    degrees = sorted({grading.reduce(a) for a in D})
    if grading.is_positive():
        return sorted(degrees, key=lambda a: (grading.weight(a), a))
    return degrees


class IdealSearch:
    """Tree search for the monomial ideals generated in degrees D with h_I = h on D."""

    def __init__(self, grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]], caps: Caps = DEFAULT_CAPS):
        h.check(grading)
        self.grading = grading
        self.h = h
        self.caps = caps
        self.order = processing_order(grading, D)
        self.moves = degree_zero_generators(grading, caps)
        self.targets = {a: h.value(grading, a, caps) for a in self.order}
        self.nodes = 0

    # ---------------------------
    # Choices in one degree
    # ---------------------------
    def standard_choices(self, a: Degree, J: MonomialIdeal) -> List[Tuple[Exponent, ...]]:
        """Candidate standard sets of size h(a) in degree a, given the forced part J."""
        target = self.targets[a]
        if not self.moves:
            available = [u for u in fiber(self.grading, a, caps=self.caps).monomials if not J.contains(u)]
            if len(available) < target:
                return []
            return [tuple(c) for c in itertools.combinations(available, target)]
        # standard sets are closed under removing degree-zero generators
        roots = [f for f in fiber_generators(self.grading, a, self.caps) if not J.contains(f)]
        level = {frozenset()}
        for _ in range(target):
            nxt = set()
            for S in level:
                for u in self._addable(S, roots, J):
                    nxt.add(S | {u})
                    self._tick()
            level = nxt
            if not level:
                return []
        return [lex_sorted(S) for S in sorted(level, key=lex_sorted)]

    def _addable(self, S: FrozenSet[Exponent], roots, J: MonomialIdeal):
        candidates = set(roots)
        for s in S:
            for g in self.moves:
                candidates.add(tuple(x + y for x, y in zip(s, g)))
        for u in candidates:
            if u in S or J.contains(u):
                continue
            below = [tuple(x - y for x, y in zip(u, g)) for g in self.moves]
            if all(v in S for v in below if min(v) >= 0):
                yield u

    def new_generators(self, a: Degree, standard: Tuple[Exponent, ...], J: MonomialIdeal) -> List[Exponent]:
        """Minimal degree-a monomials outside the chosen standard set and outside J."""
        if not self.moves:
            pool = set(fiber(self.grading, a, caps=self.caps).monomials)
        else:
            pool = set(fiber_generators(self.grading, a, self.caps))
            for s in standard:
                pool.update(tuple(x + y for x, y in zip(s, g)) for g in self.moves)
        pool.difference_update(standard)
        if not pool:
            return []
        return [u for u in minimalize(pool, self.grading.n).generators if not J.contains(u)]

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.caps.max_branches:
            raise SearchCapExceeded(f"ideal search exceeded max_branches={self.caps.max_branches}")

    # ---------------------------
    # Search
    # ---------------------------
    def run(self) -> List[MonomialIdeal]:
        found = set()
        self._descend(0, MonomialIdeal.zero(self.grading.n), {}, found)
        ideals = []
        for I in found:
            for a in self.order:
                if hilbert_value(I, self.grading, a, caps=self.caps) != self.targets[a]:
                    raise InternalAssertion("enumerated ideal misses the Hilbert function", degree=a,
                                            ideal=I.generators)
            ideals.append(I)
        ideals.sort(key=lambda I: I.generators)
        assert_antichain(ideals)
        logger.info("enumerated %d ideals on %d degrees (%d search nodes)", len(ideals), len(self.order), self.nodes)
        return ideals

    def _descend(self, depth: int, J: MonomialIdeal, chosen: Dict[Degree, Tuple[Exponent, ...]], found: set):
        if depth == len(self.order):
            found.add(J)
            return
        a = self.order[depth]
        for standard in self.standard_choices(a, J):
            self._tick()
            gens = self.new_generators(a, standard, J)
            if any(any(all(x <= y for x, y in zip(q, s)) for q in gens) for S in chosen.values() for s in S):
                continue
            nxt = minimalize(J.generators + tuple(gens), self.grading.n) if gens else J
            chosen[a] = standard
            self._descend(depth + 1, nxt, chosen, found)
            del chosen[a]


def assert_antichain(ideals: Sequence[MonomialIdeal]) -> None:
    """No ideal of the set contains another."""
    for I, K in itertools.permutations(ideals, 2):
        if I.is_subideal_of(K):
            raise InternalAssertion("enumerated ideals are not an antichain", smaller=I.generators,
                                    larger=K.generators)


def enumerate_on(grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]],
                 caps: Caps = DEFAULT_CAPS) -> List[MonomialIdeal]:
    return IdealSearch(grading, h, D, caps).run()


def enumerate_admissible(grading: Grading, h: HilbertSpec, seed: Optional[Sequence[Sequence[int]]] = None,
                         caps: Caps = DEFAULT_CAPS) -> List[MonomialIdeal]:
    """All monomial ideals with h_I = h, certified by a very supportive set."""
    from Hilbert_schemes.Supportive.DegreeSets import compute_very_supportive
    return compute_very_supportive(grading, h, seed=seed, caps=caps).ideals
