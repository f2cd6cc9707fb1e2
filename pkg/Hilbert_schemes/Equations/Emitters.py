import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from Hilbert_schemes.Exceptions import CapExceeded, ProblemValidationError
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec
from Hilbert_schemes.GradingCore.Gradings import (Degree, Exponent, FiberBox, Grading, deg_of, degree_zero_generators,
                                                  fiber, fiber_generators, lex_sorted, semigroup_contains)
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps
from Hilbert_schemes.Symbolic.Brackets import (SparsePoly, StiefelBracketMap, SymMatrix, SymVar, block_laplace,
                                               bracket, minor)

logger = logging.getLogger(__name__)


@dataclass
class EquationSet:
    """Deduplicated equations up to sign, in canonical order."""

    emitter: str
    equations: List[SparsePoly]
    meta: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def collect(cls, emitter: str, polys, meta: Optional[dict] = None) -> "EquationSet":
        seen = {}
        produced = 0
        for p in polys:
            produced += 1
            if p.is_zero():
                continue
            q = p.normalized()
            seen.setdefault(q, q)
        equations = sorted(seen, key=lambda q: q.sort_key())
        meta = dict(meta or {})
        meta["produced"] = produced
        meta["count"] = len(equations)
        meta["by_term_count"] = {str(k): v for k, v in sorted(Counter(q.term_count() for q in equations).items())}
        logger.info("%s: %d equations from %d candidates", emitter, len(equations), produced)
        return cls(emitter, equations, meta)

    def __len__(self) -> int:
        return len(self.equations)

    def variables(self) -> List[SymVar]:
        return sorted({v for q in self.equations for v in q.variables()})

    def to_dict(self) -> dict:
        variables = self.variables()
        index = {v: i for i, v in enumerate(variables)}
        return {
            "emitter": self.emitter,
            "vars": [v.to_dict() for v in variables],
            "equations": [q.to_dict(index) for q in self.equations],
            "meta": self.meta,
        }


def _less(grading: Grading, a: Degree, b: Degree, caps: Caps) -> bool:
    return a != b and semigroup_contains(grading, grading.sub(b, a), caps=caps)


def _monomials(grading: Grading, a: Degree, box: Optional[FiberBox], caps: Caps) -> Tuple[Exponent, ...]:
    # positive gradings have finite fibers; the box only applies otherwise
    return fiber(grading, a, None if grading.is_positive() else box, caps).monomials


def _shift(u: Exponent, m: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(u, m))


def kernel_generator(B: Sequence[Exponent], degree: Degree) -> List[Tuple[Exponent, SparsePoly]]:
    """g_B = sum_i (-1)^i [B minus m_i] m_i, an element of L_a for an (h+1)-set B in canonical order."""
    B = lex_sorted(B)
    out = []
    for i, m in enumerate(B):
        coeff = bracket(B[:i] + B[i + 1:], degree)
        out.append((m, coeff if i % 2 == 0 else -coeff))
    return out


# ---------------------------
# Natural quadratic equations
# ---------------------------
def quadratic_equations(grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]],
                        box: Optional[FiberBox] = None, caps: Caps = DEFAULT_CAPS) -> EquationSet:
    """x^u L_a lies in L_b for a < b in D, as bilinear bracket relations."""
    degrees = sorted({grading.reduce(a) for a in D})

    def emit():
        for a, b in itertools.permutations(degrees, 2):
            if not _less(grading, a, b, caps):
                continue
            ha, hb = h.value(grading, a, caps), h.value(grading, b, caps)
            fa, fb = _monomials(grading, a, box, caps), _monomials(grading, b, box, caps)
            if hb == 0 or ha + 1 > len(fa):
                continue
            shifts = _monomials(grading, grading.sub(b, a), box, caps)
            for u in shifts:
                for B in itertools.combinations(fa, ha + 1):
                    generator = kernel_generator(B, a)
                    for S in itertools.combinations(fb, hb - 1):
                        total = SparsePoly()
                        for m, coeff in generator:
                            total = total + coeff * bracket((_shift(u, m),) + S, b)
                        yield total

    return EquationSet.collect("quadratic", emit(), {"D": [list(a) for a in degrees]})


# ---------------------------
# Natural determinantal equations
# ---------------------------
class Gamma(NamedTuple):
    matrix: SymMatrix
    minor_size: int
    skipped_rows: int


def gamma_matrix(grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]], e: Sequence[int],
                 box: Optional[FiberBox] = None, caps: Caps = DEFAULT_CAPS) -> Gamma:
    """Rows x^u g_B for d < e in D; columns the monomials of degree e.

    Under a box, rows with a shifted monomial outside the boxed columns are skipped and counted.
    """
    e = grading.reduce(e)
    columns = _monomials(grading, e, box, caps)
    position = {m: j for j, m in enumerate(columns)}
    rows = []
    skipped = 0
    for d in sorted({grading.reduce(a) for a in D}):
        if not _less(grading, d, e, caps):
            continue
        hd = h.value(grading, d, caps)
        fd = _monomials(grading, d, box, caps)
        for u in _monomials(grading, grading.sub(e, d), box, caps):
            for B in itertools.combinations(fd, hd + 1):
                generator = kernel_generator(B, d)
                if any(_shift(u, m) not in position for m, _ in generator):
                    skipped += 1
                    continue
                row = [SparsePoly() for _ in columns]
                for m, coeff in generator:
                    row[position[_shift(u, m)]] = coeff
                rows.append(row)
    if skipped:
        logger.warning("%d rows of Gamma leave the box and were skipped", skipped)
    k = len(columns) - h.value(grading, e, caps) + 1
    return Gamma(SymMatrix(rows, len(columns), column_labels=columns), k, skipped)


def determinantal_equations(grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]], e: Sequence[int],
                            box: Optional[FiberBox] = None, caps: Caps = DEFAULT_CAPS) -> EquationSet:
    gamma, k, skipped = gamma_matrix(grading, h, D, e, box, caps)
    meta = {"D": sorted(list(grading.reduce(a)) for a in D), "e": list(grading.reduce(e)), "shape": list(gamma.shape),
            "minor_size": k}
    if skipped:
        meta["rows_outside_box"] = skipped
    if k < 1 or k > min(gamma.shape):
        logger.warning("minor size %d does not fit a %dx%d matrix; the condition is vacuous", k, *gamma.shape)
        meta["vacuous"] = True
        return EquationSet.collect("fitting", [], meta)
    total = comb(gamma.nrows, k) * comb(gamma.ncols, k)
    if total > caps.max_minors:
        raise CapExceeded(f"{total} minors exceed max_minors={caps.max_minors}", shape=gamma.shape, size=k)
    polys = (minor(gamma, rows, cols)
             for rows in itertools.combinations(range(gamma.nrows), k)
             for cols in itertools.combinations(range(gamma.ncols), k))
    return EquationSet.collect("fitting", polys, meta)


# ---------------------------
# Stiefel matrices and Bayer's construction
# ---------------------------
def stiefel_matrix(rows: int, monomials: Sequence[Exponent]) -> SymMatrix:
    return SymMatrix([[SparsePoly.var(SymVar.stiefel(k, m)) for m in monomials] for k in range(rows)],
                     len(monomials), column_labels=list(monomials))


def _divide(M: Exponent, i: int) -> Optional[Exponent]:
    if M[i] == 0:
        return None
    return tuple(e - 1 if j == i else e for j, e in enumerate(M))


@dataclass
class BayerMatrices:
    n: int
    degree: int
    monomials: Tuple[Exponent, ...]
    shifted: Tuple[Exponent, ...]
    omega: SymMatrix
    omega_hat: SymMatrix
    reduced: SymMatrix
    reduction_rule: str = "for each monomial of degree d+1 drop the copy x_j*(M/x_j) with j the smallest index dividing M"


def bayer_matrices(n: int, d0: int, h: int) -> BayerMatrices:
    """Omega, the n-fold shifted Omega-hat, and the reduced tensor matrix (Omega x S_1)_red."""
    grading = Grading.standard(n)
    monomials = fiber(grading, (d0,)).monomials
    shifted = fiber(grading, (d0 + 1,)).monomials
    r = len(monomials)
    if not 0 <= h <= r:
        raise ProblemValidationError(f"h={h} out of range for {r} monomials")
    k = r - h
    omega = stiefel_matrix(k, monomials)
    zero = SparsePoly()
    column_of = {m: j for j, m in enumerate(monomials)}

    hat_rows = []
    red_columns = []
    for i in range(n):
        for row in range(k):
            hat_rows.append([omega.entries[row][column_of[_divide(M, i)]] if M[i] else zero for M in shifted])
        for m in monomials:
            M = tuple(e + 1 if j == i else e for j, e in enumerate(m))
            first = min(j for j in range(n) if M[j])
            if i != first:
                red_columns.append((i, m))
    red_rows = []
    for i in range(n):
        for row in range(k):
            red_rows.append([omega.entries[row][column_of[m]] if b == i else zero for b, m in red_columns])

    blocks = [k] * n
    omega_hat = SymMatrix(hat_rows, len(shifted), blocks, column_labels=[("hat", M) for M in shifted])
    reduced = SymMatrix(red_rows, len(red_columns), blocks, column_labels=[("red", i, m) for i, m in red_columns])
    return BayerMatrices(n, d0, monomials, shifted, omega, omega_hat, reduced)


def bayer_equations(n: int, d0: int, h: int, h_prime: int, caps: Caps = DEFAULT_CAPS) -> EquationSet:
    """Maximal minors of (Omega-hat | reduced) using r'-h'+1 columns of Omega-hat, in brackets."""
    mats = bayer_matrices(n, d0, h)
    r, r_prime = len(mats.monomials), len(mats.shifted)
    rows = n * (r - h)
    from_hat = r_prime - h_prime + 1
    from_red = rows - from_hat
    meta = {"n": n, "d0": d0, "h": h, "h_prime": h_prime,
            "omega_hat_shape": list(mats.omega_hat.shape), "reduced_shape": list(mats.reduced.shape),
            "columns_from_omega_hat": from_hat, "columns_from_reduced": from_red,
            "reduction_rule": mats.reduction_rule}
    if from_hat < 0 or from_hat > r_prime or from_red < 0 or from_red > mats.reduced.ncols:
        logger.warning("Bayer column counts (%d, %d) do not fit; the condition is vacuous", from_hat, from_red)
        meta["vacuous"] = True
        return EquationSet.collect("bayer", [], meta)
    selections = comb(r_prime, from_hat) * comb(mats.reduced.ncols, from_red)
    meta["selections"] = selections
    if selections > caps.max_minors:
        raise CapExceeded(f"{selections} Bayer minors exceed max_minors={caps.max_minors}")
    full = mats.omega_hat.hstack(mats.reduced)
    bracket_map = StiefelBracketMap(mats.omega, mats.monomials, (d0,))
    polys = (block_laplace(full, hat + tuple(r_prime + j for j in red), bracket_map)
             for hat in itertools.combinations(range(r_prime), from_hat)
             for red in itertools.combinations(range(mats.reduced.ncols), from_red))
    return EquationSet.collect("bayer", polys, meta)


def fitting_equations_stiefel(n: int, d0: int, h: int, h_prime: int, caps: Caps = DEFAULT_CAPS) -> EquationSet:
    """Minors of order r'-h'+1 of Omega-hat in Stiefel coordinates."""
    mats = bayer_matrices(n, d0, h)
    omega_hat = mats.omega_hat
    k = len(mats.shifted) - h_prime + 1
    meta = {"n": n, "d0": d0, "h": h, "h_prime": h_prime, "omega_hat_shape": list(omega_hat.shape),
            "minor_size": k}
    if k < 1 or k > min(omega_hat.shape):
        logger.warning("minor size %d does not fit Omega-hat; the condition is vacuous", k)
        meta["vacuous"] = True
        return EquationSet.collect("stiefel-fitting", [], meta)
    total = comb(omega_hat.nrows, k) * comb(omega_hat.ncols, k)
    if total > caps.max_minors:
        raise CapExceeded(f"{total} minors exceed max_minors={caps.max_minors}")
    polys = (minor(omega_hat, rows, cols)
             for rows in itertools.combinations(range(omega_hat.nrows), k)
             for cols in itertools.combinations(range(omega_hat.ncols), k))
    return EquationSet.collect("stiefel-fitting", polys, meta)


# ---------------------------
# Toric binomials
# ---------------------------
def toric_binomials(grading: Grading, D: Sequence[Sequence[int]], box: Optional[FiberBox] = None,
                    caps: Caps = DEFAULT_CAPS) -> EquationSet:
    """z^a_u z^b_{v+w} - z^a_v z^b_{u+w} for a <= b in D."""
    degrees = sorted({grading.reduce(a) for a in D})

    def z(a, u):
        return SparsePoly.var(SymVar.toric(a, u))

    def emit():
        for a, b in itertools.product(degrees, repeat=2):
            if not semigroup_contains(grading, grading.sub(b, a), caps=caps):
                continue
            fa = _monomials(grading, a, box, caps)
            shifts = _monomials(grading, grading.sub(b, a), box, caps)
            for u, v in itertools.combinations(fa, 2):
                for w in shifts:
                    yield z(a, u) * z(b, _shift(v, w)) - z(a, v) * z(b, _shift(u, w))

    return EquationSet.collect("toric", emit(), {"D": [list(a) for a in degrees]})


# ---------------------------
# Local chart equations
# ---------------------------
def operator_set(grading: Grading, D: Sequence[Degree], caps: Caps = DEFAULT_CAPS) -> Dict[Tuple[Degree, Degree], Tuple[Exponent, ...]]:
    """Multiplication operators generating the module structure between degrees of D."""
    ops = {}
    for a, c in itertools.product(D, repeat=2):
        if a == c:
            if not grading.is_positive():
                ops[(a, c)] = degree_zero_generators(grading, caps)
            continue
        if semigroup_contains(grading, grading.sub(c, a), caps=caps):
            ops[(a, c)] = fiber_generators(grading, grading.sub(c, a), caps)
    return ops


def chart_equations(grading: Grading, h: HilbertSpec, D: Sequence[Sequence[int]],
                    basis: Mapping[Degree, Sequence[Exponent]], caps: Caps = DEFAULT_CAPS) -> EquationSet:
    """Relations on the chart coordinates gamma^x_b around the standard set `basis`."""
    degrees = sorted({grading.reduce(a) for a in D})
    B = {}
    for a in degrees:
        chosen = lex_sorted(tuple(m) for m in basis.get(a, ()))
        if len(chosen) != h.value(grading, a, caps):
            raise ProblemValidationError(f"chart basis in degree {list(a)} needs {h.value(grading, a, caps)} monomials",
                                         degree=a)
        for m in chosen:
            if grading.reduce(deg_of(grading, m)) != a:
                raise ProblemValidationError("chart basis monomial has the wrong degree", monomial=m, degree=a)
        B[a] = chosen
    moves = degree_zero_generators(grading, caps)

    def support(a):
        if grading.is_positive():
            return fiber(grading, a, caps=caps).monomials
        extra = {_shift(b, g) for b in B[a] for g in moves}
        return lex_sorted(set(fiber_generators(grading, a, caps)) | set(B[a]) | extra)

    def gamma(x, b):
        d = deg_of(grading, x)
        if d in B and x in B[d]:
            return SparsePoly.constant(int(x == b))
        return SparsePoly.var(SymVar.chart(x, b))

    def emit():
        for a in degrees:
            for x in B[a]:
                for b in B[a]:
                    yield SparsePoly.var(SymVar.chart(x, b)) - int(x == b)
        for (a, c), ops in sorted(operator_set(grading, degrees, caps).items()):
            for x in support(a):
                if x in B[a]:
                    continue
                for f in ops:
                    fx = _shift(f, x)
                    for b in B[c]:
                        rhs = SparsePoly()
                        for b_prime in B[a]:
                            rhs = rhs + gamma(x, b_prime) * gamma(_shift(f, b_prime), b)
                        yield gamma(fx, b) - rhs

    meta = {"D": [list(a) for a in degrees], "basis": {str(list(a)): [list(m) for m in B[a]] for a in degrees},
            "syzygy_relations": "vacuous: monomials of a fiber are linearly independent",
            "delta_relations": "substituted into the operator relations"}
    return EquationSet.collect("chart", emit(), meta)
