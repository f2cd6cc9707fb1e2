import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from Hilbert_schemes.Exceptions import (DimensionMismatch, InternalAssertion, ProblemValidationError,
                                        SearchCapExceeded, UnboundedFiber)
from Hilbert_schemes.GradingCore.SmithForm import is_surjective
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)

# A degree is a flat integer tuple: free coordinates first, then torsion residues.
Degree = Tuple[int, ...]
# Exponent vector of a monomial.
Exponent = Tuple[int, ...]


def lex_sorted(monomials) -> Tuple[Exponent, ...]:
    """Canonical monomial order: lex with x1 > x2 > ..., largest first."""
    return tuple(sorted(set(monomials), reverse=True))


@dataclass(frozen=True)
class Grading:
    """deg: N^n -> Z^d + (+) Z/m_j, one column per variable."""

    free_rank: int
    moduli: Tuple[int, ...]
    columns: Tuple[Degree, ...]

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], free_rank: int,
                     moduli: Sequence[int] = (), check: bool = True) -> "Grading":
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise ProblemValidationError("torsion moduli must be at least 2", moduli=moduli)
        width = free_rank + len(moduli)
        reduced = []
        for col in columns:
            if len(col) != width:
                raise DimensionMismatch(f"degree column has {len(col)} entries, expected {width}", column=col)
            reduced.append(_reduce(tuple(int(v) for v in col), free_rank, moduli))
        grading = cls(free_rank, moduli, tuple(reduced))
        if check and not grading.generates_group():
            raise ProblemValidationError("degree columns do not generate the grading group", columns=columns)
        return grading

    @classmethod
    def standard(cls, n: int) -> "Grading":
        return cls(1, (), tuple((1,) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def width(self) -> int:
        return self.free_rank + len(self.moduli)

    @property
    def zero(self) -> Degree:
        return (0,) * self.width

    # ---------------------------
    # Degree arithmetic
    # ---------------------------
    def reduce(self, a: Sequence[int]) -> Degree:
        if len(a) != self.width:
            raise DimensionMismatch(f"degree has {len(a)} entries, expected {self.width}", degree=a)
        return _reduce(tuple(int(v) for v in a), self.free_rank, self.moduli)

    def add(self, a: Degree, b: Degree) -> Degree:
        return _reduce(tuple(x + y for x, y in zip(a, b)), self.free_rank, self.moduli)

    def sub(self, a: Degree, b: Degree) -> Degree:
        return _reduce(tuple(x - y for x, y in zip(a, b)), self.free_rank, self.moduli)

    def free_part(self, a: Degree) -> Tuple[int, ...]:
        return a[:self.free_rank]

    def generates_group(self) -> bool:
        rows = []
        for k in range(self.width):
            row = [col[k] for col in self.columns]
            slack = [0] * len(self.moduli)
            if k >= self.free_rank:
                slack[k - self.free_rank] = self.moduli[k - self.free_rank]
            rows.append(row + slack)
        if not rows:
            return True
        return is_surjective(np.array(rows, dtype=object))

    def restrict(self, variables: Sequence[int]) -> "Grading":
        """The grading of the polynomial ring in the listed variables only."""
        return _restricted(self, tuple(variables))

    # ---------------------------
    # Positivity
    # ---------------------------
    @cached_property
    def positivity_certificate(self) -> Optional[Tuple[Fraction, ...]]:
        return _positivity_certificate(tuple(self.free_part(c) for c in self.columns), self.free_rank)

    def is_positive(self) -> bool:
        return self.positivity_certificate is not None

    def weight(self, a: Degree) -> Fraction:
        lam = self.positivity_certificate
        if lam is None:
            raise InternalAssertion("weight requested for a nonpositive grading")
        return sum((l * v for l, v in zip(lam, self.free_part(a))), Fraction(0))


def _reduce(a: Tuple[int, ...], free_rank: int, moduli: Tuple[int, ...]) -> Degree:
    if not moduli:
        return a
    return a[:free_rank] + tuple(v % m for v, m in zip(a[free_rank:], moduli))


@lru_cache(maxsize=1024)
def _restricted(grading: Grading, variables: Tuple[int, ...]) -> Grading:
    return Grading(grading.free_rank, grading.moduli, tuple(grading.columns[i] for i in variables))


@dataclass(frozen=True)
class FiberBox:
    """Per-variable exponent upper bounds; None means unbounded."""

    bounds: Tuple[Optional[int], ...]

    @classmethod
    def parse(cls, text: str, n: int) -> "FiberBox":
        bounds: List[Optional[int]] = [None] * n
        for item in filter(None, (piece.strip() for piece in text.split(","))):
            try:
                index, bound = item.split(":")
                index, bound = int(index), int(bound)
            except ValueError:
                raise ProblemValidationError(f"box entry '{item}' is not of the form i:B")
            if not 0 <= index < n or bound < 0:
                raise ProblemValidationError(f"box entry '{item}' out of range", n=n)
            bounds[index] = bound
        return cls(tuple(bounds))

    def is_finite(self) -> bool:
        return all(b is not None for b in self.bounds)

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {str(i): b for i, b in enumerate(self.bounds)}


class FiberResult(NamedTuple):
    monomials: Tuple[Exponent, ...]
    exhaustive: bool
    method: str


# ---------------------------
# Exact positivity by Fourier-Motzkin elimination
# ---------------------------
def _positivity_certificate(free_columns, d) -> Optional[Tuple[Fraction, ...]]:
    """Rational lam with lam . a_i >= 1 for every column, or None if none exists.

    Torsion never matters: a multiple of any vector kills it.
    """
    system = [(tuple(Fraction(v) for v in col), Fraction(1)) for col in free_columns]
    stages = [system]
    for j in range(d):
        current = stages[-1]
        keep, upper, lower = [], [], []
        for coeffs, bound in current:
            c = coeffs[j]
            (keep if c == 0 else lower if c > 0 else upper).append((coeffs, bound))
        combined = list(keep)
        for (cp, bp), (cq, bq) in itertools.product(lower, upper):
            wp, wq = -cq[j], cp[j]
            coeffs = tuple(wp * x + wq * y for x, y in zip(cp, cq))
            combined.append((coeffs, wp * bp + wq * bq))
        stages.append(_drop_duplicates(combined))

    if any(bound > 0 for _, bound in stages[-1]):
        return None

    lam = [Fraction(0)] * d
    for j in reversed(range(d)):
        low, high = None, None
        for coeffs, bound in stages[j]:
            c = coeffs[j]
            if c == 0:
                continue
            rest = bound - sum((coeffs[k] * lam[k] for k in range(j + 1, d)), Fraction(0))
            value = rest / c
            if c > 0:
                low = value if low is None else max(low, value)
            else:
                high = value if high is None else min(high, value)
        if low is not None:
            lam[j] = low
        elif high is not None:
            lam[j] = min(high, Fraction(0))
    lam = tuple(lam)
    for col in free_columns:
        if sum((l * v for l, v in zip(lam, col)), Fraction(0)) < 1:
            raise InternalAssertion("positivity certificate failed its own inequalities", certificate=lam)
    return lam


def _drop_duplicates(system):
    seen, out = set(), []
    for coeffs, bound in system:
        key = (coeffs, bound)
        if key not in seen:
            seen.add(key)
            out.append((coeffs, bound))
    return out


# ---------------------------
# Operations
# ---------------------------
def deg_of(grading: Grading, u: Sequence[int]) -> Degree:
    if len(u) != grading.n:
        raise DimensionMismatch(f"exponent vector has {len(u)} entries, expected {grading.n}", exponent=u)
    if any(e < 0 for e in u):
        raise ProblemValidationError("exponent vectors must be nonnegative", exponent=u)
    return _deg(grading, tuple(u))


def _deg(grading: Grading, u: Exponent) -> Degree:
    total = [0] * grading.width
    for e, col in zip(u, grading.columns):
        if e:
            for k, v in enumerate(col):
                total[k] += e * v
    return _reduce(tuple(total), grading.free_rank, grading.moduli)


def is_positive(grading: Grading) -> bool:
    return grading.is_positive()


def fiber(grading: Grading, a: Sequence[int], box: Optional[FiberBox] = None,
          caps: Caps = DEFAULT_CAPS) -> FiberResult:
    """All monomials of degree a, lex order largest first."""
    a = grading.reduce(a)
    if grading.is_positive():
        monomials = positive_fiber(grading, a, caps)
        if box is not None:
            monomials = tuple(u for u in monomials if _in_box(u, box))
        return FiberResult(monomials, True, "weighted")
    if box is not None and box.is_finite():
        monomials = lex_sorted(_boxed_fiber(grading, a, box, caps))
        # every nonempty fiber of a nonpositive grading is infinite
        empty = not fiber_generators(grading, a, caps)
        return FiberResult(monomials, empty, "box")
    if not fiber_generators(grading, a, caps):
        return FiberResult((), True, "certified-empty")
    raise UnboundedFiber("fiber of a nonpositive grading is infinite; pass a finite box", degree=a)


def semigroup_contains(grading: Grading, c: Sequence[int], box: Optional[FiberBox] = None,
                       caps: Caps = DEFAULT_CAPS) -> bool:
    c = grading.reduce(c)
    if box is not None and not grading.is_positive():
        return bool(_boxed_fiber(grading, c, box, caps))
    return bool(fiber_generators(grading, c, caps))


def le(grading: Grading, a: Degree, b: Degree, caps: Caps = DEFAULT_CAPS) -> bool:
    """The partial order a <= b iff b - a lies in the degree semigroup."""
    return semigroup_contains(grading, grading.sub(b, a), caps=caps)


def degree_zero_generators(grading: Grading, caps: Caps = DEFAULT_CAPS) -> Tuple[Exponent, ...]:
    """Hilbert basis of the degree-zero monomials."""
    return _degree_zero_generators(grading, caps)


@lru_cache(maxsize=256)
def _degree_zero_generators(grading: Grading, caps: Caps) -> Tuple[Exponent, ...]:
    if grading.is_positive():
        return ()
    # Graver elements lying in the orthant are exactly the Hilbert basis
    from Hilbert_schemes.Toric.Lattices import graver_basis, kernel_lattice
    graver = graver_basis(kernel_lattice(grading), caps)
    nonneg = [b.u for b in graver if all(v >= 0 for v in b.u)]
    minimal = [u for u in nonneg if not any(w != u and all(x <= y for x, y in zip(w, u)) for w in nonneg)]
    logger.debug("degree-zero Hilbert basis of %s: %s", grading.columns, minimal)
    return lex_sorted(minimal)


# ---------------------------
# Fiber enumeration
# ---------------------------
@lru_cache(maxsize=8192)
def positive_fiber(grading: Grading, a: Degree, caps: Caps = DEFAULT_CAPS) -> Tuple[Exponent, ...]:
    """Depth-first search bounded by the positivity certificate."""
    lam = grading.positivity_certificate
    if lam is None:
        raise UnboundedFiber("weighted fiber search needs a positive grading", degree=a)
    budget = grading.weight(a)
    if budget < 0:
        return ()
    if budget > caps.max_weight:
        raise SearchCapExceeded(f"degree weight {budget} exceeds max_weight={caps.max_weight}", degree=a)
    weights = [grading.weight(col) for col in grading.columns]
    out: List[Exponent] = []
    n = grading.n
    partial = [0] * n

    def search(i, remaining, current):
        if i == n:
            if current == a:
                out.append(tuple(partial))
                if len(out) > caps.max_monomials:
                    raise SearchCapExceeded("fiber exceeds max_monomials", degree=a)
            return
        if i == n - 1:
            e = _last_exponent(grading, a, current, grading.columns[i])
            if e is not None and e * weights[i] <= remaining:
                partial[i] = e
                search(n, remaining, grading.add(current, tuple(e * v for v in grading.columns[i])))
                partial[i] = 0
            return
        top = int(remaining // weights[i])
        for e in range(top, -1, -1):
            partial[i] = e
            search(i + 1, remaining - e * weights[i],
                   _reduce(tuple(x + e * y for x, y in zip(current, grading.columns[i])),
                           grading.free_rank, grading.moduli))
        partial[i] = 0

    search(0, budget, grading.zero)
    return tuple(out)


def _last_exponent(grading: Grading, a: Degree, current: Degree, column: Degree) -> Optional[int]:
    """The only exponent of the last variable that can close the gap, if any."""
    for k in range(grading.free_rank):
        if column[k]:
            gap = a[k] - current[k]
            if gap % column[k]:
                return None
            e = gap // column[k]
            return e if e >= 0 else None
    return None


def _boxed_fiber(grading: Grading, a: Degree, box: FiberBox, caps: Caps) -> List[Exponent]:
    if len(box.bounds) != grading.n:
        raise DimensionMismatch("box has the wrong number of bounds", bounds=box.bounds)
    if not box.is_finite():
        raise UnboundedFiber("box has unbounded coordinates", bounds=box.bounds)
    out = []
    for count, u in enumerate(itertools.product(*(range(b, -1, -1) for b in box.bounds))):
        if count > caps.max_monomials:
            raise SearchCapExceeded("box exceeds max_monomials", bounds=box.bounds)
        if _deg(grading, u) == a:
            out.append(u)
    return out


def _in_box(u: Exponent, box: FiberBox) -> bool:
    return all(b is None or e <= b for e, b in zip(u, box.bounds))


# ---------------------------
# Module generators of a fiber over the degree-zero monomials
# ---------------------------
def fiber_generators(grading: Grading, a: Sequence[int], caps: Caps = DEFAULT_CAPS) -> Tuple[Exponent, ...]:
    """Divisibility-minimal monomials of degree a.

    These are the standard monomials of the ideal spanned by the degree-zero
    Hilbert basis. Each irreducible component of that ideal leaves a positive
    grading on its free variables, so every piece is a finite search.
    """
    return _fiber_generators(grading, grading.reduce(a), caps)


@lru_cache(maxsize=8192)
def _fiber_generators(grading: Grading, a: Degree, caps: Caps) -> Tuple[Exponent, ...]:
    if grading.is_positive():
        return positive_fiber(grading, a, caps)
    hilbert_basis = degree_zero_generators(grading, caps)
    found = set()
    for bounded in irreducible_components(hilbert_basis, grading.n):
        found.update(_component_fiber(grading, a, bounded, caps))
    return lex_sorted(found)


def _component_fiber(grading: Grading, a: Degree, bounded: Dict[int, int], caps: Caps) -> Iterator[Exponent]:
    """Monomials of degree a with u_i < bounded[i] on the bounded variables."""
    free = tuple(i for i in range(grading.n) if i not in bounded)
    sub = grading.restrict(free)
    if free and not sub.is_positive():
        raise InternalAssertion("free variables of a degree-zero component are not positively graded",
                                variables=free)
    fixed = sorted(bounded)
    for exps in itertools.product(*(range(bounded[i]) for i in fixed)):
        partial = [0] * grading.n
        for i, e in zip(fixed, exps):
            partial[i] = e
        rest = grading.sub(a, _deg(grading, tuple(partial)))
        if free:
            tails = positive_fiber(sub, rest, caps)
        else:
            tails = [()] if rest == grading.zero else []
        for tail in tails:
            u = list(partial)
            for i, e in zip(free, tail):
                u[i] = e
            yield tuple(u)


def irreducible_components(generators: Sequence[Exponent], n: int) -> List[Dict[int, int]]:
    """Irreducible decomposition of a monomial ideal, each component {variable: power}."""
    gens = _minimal(generators)
    if any(not any(g) for g in gens):
        return []
    components = _split(tuple(gens))
    # drop components containing another one
    unique = []
    for comp in components:
        if comp not in unique:
            unique.append(comp)
    return [c for c in unique
            if not any(o is not c and o != c and all(i in c and c[i] <= p for i, p in o.items()) for o in unique)]


def _split(gens: Tuple[Exponent, ...]) -> List[Dict[int, int]]:
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) > 1:
            i = support[0]
            pure = tuple(g[i] if k == i else 0 for k in range(len(g)))
            rest = tuple(0 if k == i else e for k, e in enumerate(g))
            others = tuple(h for h in gens if h is not g)
            return (_split(tuple(_minimal(others + (pure,))))
                    + _split(tuple(_minimal(others + (rest,)))))
    component = {}
    for g in gens:
        i = next(k for k, e in enumerate(g) if e)
        component[i] = g[i]
    return [component]


def _minimal(monomials) -> List[Exponent]:
    ms = sorted(set(monomials), key=lambda u: (sum(u), u))
    out: List[Exponent] = []
    for u in ms:
        if not any(all(x <= y for x, y in zip(w, u)) for w in out):
            out.append(u)
    return out


# ---------------------------
# Witness frontier
# ---------------------------
@lru_cache(maxsize=256)
def degree_frontier(grading: Grading, cap: int) -> Tuple[Degree, ...]:
    """The first `cap` degrees of the semigroup.

    Positive gradings are ordered by certified weight; otherwise by the least
    total degree of a monomial reaching the degree. Ties break lexicographically.
    """
    seen = {grading.zero: 0}
    layer = {grading.zero}
    level = 0
    while True:
        if grading.is_positive():
            complete = [a for a in seen if grading.weight(a) <= level]
            if len(complete) >= cap or not layer:
                ordered = sorted(complete if layer else seen, key=lambda a: (grading.weight(a), a))
                return tuple(ordered[:cap])
        elif len(seen) >= cap or not layer:
            ordered = sorted(seen, key=lambda a: (seen[a], a))
            return tuple(ordered[:cap])
        level += 1
        nxt = set()
        for a in layer:
            for col in grading.columns:
                b = grading.add(a, col)
                if b not in seen:
                    seen[b] = level
                    nxt.add(b)
        layer = nxt
