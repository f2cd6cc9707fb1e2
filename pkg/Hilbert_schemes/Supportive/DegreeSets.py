import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel

from Hilbert_schemes.Exceptions import IterationCapExceeded, ResourceCapError
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec, TailKind, enumerate_on
from Hilbert_schemes.GradingCore.Gradings import Degree, Grading, _deg, degree_frontier
from Hilbert_schemes.Monomials.MonomialIdeals import (INFINITE, MonomialIdeal, hilbert_value,
                                                      minimal_syzygy_degrees, pairwise_lcm_degrees)
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)


class Flag(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNKNOWN = "UNKNOWN"


class SyzygyMode(str, Enum):
    EXACT = "EXACT"
    SUFFICIENT = "SUFFICIENT"


# ---------------------------
# Pydantic Models
# ---------------------------
class Witness(BaseModel):
    condition: str
    ideal: List[List[int]]
    degree: List[int]
    value: Optional[str] = None
    expected: Optional[int] = None


class SupportReport(BaseModel):
    D: List[List[int]]
    g: Flag
    h: Flag
    h_prime: Flag
    s: Flag
    s_mode: SyzygyMode
    witnesses: List[Witness] = []
    frontier_size: int = 0
    candidates: int = 0
    certified: int = 0
    notes: List[str] = []

    def is_supportive(self) -> bool:
        return self.g == Flag.PASS and self.h_prime == Flag.PASS

    def is_very_supportive(self) -> bool:
        return all(flag == Flag.PASS for flag in (self.g, self.h, self.h_prime, self.s))


@dataclass(frozen=True)
class DegreeSetResult:
    """A degree set together with the ideals it certifies and the rounds it took."""

    D: Tuple[Degree, ...]
    ideals: List[MonomialIdeal]
    rounds: int


# ---------------------------
# Witness search
# ---------------------------
def witness_frontier(grading: Grading, ideals: Sequence[MonomialIdeal], caps: Caps = DEFAULT_CAPS) -> List[Degree]:
    """First cap_degrees semigroup degrees, then generator and lcm degrees of the ideals."""
    frontier = list(degree_frontier(grading, caps.cap_degrees))
    seen = set(frontier)
    extra = set()
    for I in ideals:
        extra.update(_deg(grading, g) for g in I.generators)
        extra.update(pairwise_lcm_degrees(I, grading))
    frontier.extend(sorted(extra - seen))
    return frontier


def disagreements(I: MonomialIdeal, grading: Grading, h: HilbertSpec, frontier: Sequence[Degree],
                  caps: Caps = DEFAULT_CAPS) -> Iterator[Tuple[Degree, float, int]]:
    """(degree, h_I, h) wherever the two differ, in frontier order."""
    for a in frontier:
        value = hilbert_value(I, grading, a, caps=caps)
        expected = h.value(grading, a, caps)
        if value != expected:
            yield a, value, expected


def _first_excess(I, grading, h, frontier, caps):
    return next((d for d in disagreements(I, grading, h, frontier, caps) if d[1] > d[2]), None)


def _witness(condition: str, I: MonomialIdeal, a: Degree, value=None, expected=None) -> Witness:
    shown = None if value is None else ("inf" if value == INFINITE else str(int(value)))
    return Witness(condition=condition, ideal=I.to_list(), degree=list(a), value=shown, expected=expected)


def seed_degrees(grading: Grading, h: HilbertSpec) -> Set[Degree]:
    if h.tail == TailKind.CONSTANT:
        return {grading.zero}
    if h.tail == TailKind.POLYNOMIAL:
        return {grading.reduce((h.threshold,))}
    support = h.support()
    seed = {grading.zero} | set(support)
    for a in support:
        seed.update(grading.add(a, col) for col in grading.columns)
    return seed


# ---------------------------
# Supportive and very supportive sets
# ---------------------------
def compute_supportive(grading: Grading, h: HilbertSpec, seed: Optional[Sequence[Sequence[int]]] = None,
                       caps: Caps = DEFAULT_CAPS) -> DegreeSetResult:
    """Grow D by the degrees where some ideal of C_D exceeds h, until none does."""
    D = {grading.reduce(a) for a in seed} if seed is not None else seed_degrees(grading, h)
    for rounds in range(1, caps.cap_iter + 1):
        candidates = enumerate_on(grading, h, D, caps)
        frontier = witness_frontier(grading, candidates, caps)
        added = set()
        certified = []
        for I in candidates:
            excess = _first_excess(I, grading, h, frontier, caps)
            if excess is not None:
                added.add(excess[0])
            elif next(disagreements(I, grading, h, frontier, caps), None) is None:
                certified.append(I)
        added -= D
        logger.info("supportive round %d: |D|=%d, %d candidates, %d new degrees", rounds, len(D),
                    len(candidates), len(added))
        if not added:
            return DegreeSetResult(tuple(sorted(D)), certified, rounds)
        D |= added
    raise IterationCapExceeded(f"supportive iteration did not settle in cap_iter={caps.cap_iter} rounds",
                               D=sorted(D))


def compute_very_supportive(grading: Grading, h: HilbertSpec, seed: Optional[Sequence[Sequence[int]]] = None,
                            caps: Caps = DEFAULT_CAPS) -> DegreeSetResult:
    """Extend a supportive set until every ideal of C_D has Hilbert function h and minimal S-pairs in D."""
    base = compute_supportive(grading, h, seed, caps)
    D = set(base.D)
    for rounds in range(1, caps.cap_iter + 1):
        candidates = enumerate_on(grading, h, D, caps)
        frontier = witness_frontier(grading, candidates, caps)
        added = set()
        certified = []
        for I in candidates:
            miss = next(disagreements(I, grading, h, frontier, caps), None)
            if miss is not None:
                added.add(miss[0])
                continue
            certified.append(I)
            added.update(minimal_syzygy_degrees(I, grading))
        added -= D
        logger.info("very supportive round %d: |D|=%d, %d certified, %d new degrees", rounds, len(D),
                    len(certified), len(added))
        if not added:
            return DegreeSetResult(tuple(sorted(D)), certified, base.rounds + rounds)
        D |= added
    raise IterationCapExceeded(f"very supportive iteration did not settle in cap_iter={caps.cap_iter} rounds",
                               D=sorted(D))


# ---------------------------
# Conditions (g), (h), (h'), (s)
# ---------------------------
def check_conditions(grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]],
                     mode: SyzygyMode = SyzygyMode.EXACT, caps: Caps = DEFAULT_CAPS) -> SupportReport:
    D = sorted({grading.reduce(a) for a in D})
    report = SupportReport(D=[list(a) for a in D], g=Flag.UNKNOWN, h=Flag.UNKNOWN, h_prime=Flag.UNKNOWN,
                           s=Flag.UNKNOWN, s_mode=mode)
    try:
        candidates = enumerate_on(grading, h, D, caps)
        frontier = witness_frontier(grading, candidates, caps)
    except ResourceCapError as exc:
        logger.warning("conditions on %s left unknown: %s", D, exc.detail)
        report.notes.append(f"{exc.code}: {exc.detail}")
        return report
    report.candidates = len(candidates)
    report.frontier_size = len(frontier)

    certified = []
    h_ok, h_prime_ok = True, True
    try:
        for I in candidates:
            misses = list(disagreements(I, grading, h, frontier, caps))
            if not misses:
                certified.append(I)
                continue
            h_ok = False
            a, value, expected = misses[0]
            report.witnesses.append(_witness("h", I, a, value, expected))
            excess = next((m for m in misses if m[1] > m[2]), None)
            if excess is not None:
                h_prime_ok = False
                report.witnesses.append(_witness("h_prime", I, *excess))
    except ResourceCapError as exc:
        logger.warning("h and h' on %s left unknown: %s", D, exc.detail)
        report.notes.append(f"h: {exc.code}: {exc.detail}")
        report.witnesses = []
        return report
    report.h = Flag.PASS if h_ok else Flag.FAIL
    report.h_prime = Flag.PASS if h_prime_ok else Flag.FAIL
    report.certified = len(certified)

    population = certified
    if h_prime_ok:
        report.g = Flag.PASS
        report.notes.append("g follows from h_prime: every ideal with Hilbert function h is generated in D")
    else:
        try:
            population = compute_very_supportive(grading, h, caps=caps).ideals
        except ResourceCapError as exc:
            report.notes.append(f"g: {exc.code}: {exc.detail}")
            population = None
        if population is not None:
            report.g = Flag.PASS
            allowed = set(D)
            for I in population:
                for g in I.generators:
                    a = _deg(grading, g)
                    if a not in allowed:
                        report.g = Flag.FAIL
                        report.witnesses.append(_witness("g", I, a))
                        break

    if population is None:
        return report
    allowed = set(D)
    s_flag, s_witnesses = Flag.PASS, []
    try:
        for I in population:
            if mode == SyzygyMode.EXACT:
                degrees = minimal_syzygy_degrees(I, grading)
            else:
                degrees = pairwise_lcm_degrees(I, grading)
            outside = [a for a in degrees if a not in allowed]
            if outside:
                s_flag = Flag.FAIL
                s_witnesses.append(_witness("s", I, outside[0]))
    except ResourceCapError as exc:
        report.notes.append(f"s: {exc.code}: {exc.detail}")
        s_flag, s_witnesses = Flag.UNKNOWN, []
    report.s = s_flag
    report.witnesses.extend(s_witnesses)
    logger.info("conditions on %s: g=%s h=%s h'=%s s=%s", [list(a) for a in D], report.g.value, report.h.value,
                report.h_prime.value, report.s.value)
    return report
