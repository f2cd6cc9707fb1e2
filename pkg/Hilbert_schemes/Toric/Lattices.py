import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from Hilbert_schemes.Exceptions import CapExceeded, ProblemValidationError
from Hilbert_schemes.GradingCore.Gradings import (Degree, FiberBox, Grading, _deg, fiber, semigroup_contains)
from Hilbert_schemes.GradingCore.SmithForm import kernel
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelLattice:
    """M = ker(Z^n -> A); rows of `basis` span it."""

    n: int
    basis: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Binomial:
    """x^{u+} - x^{u-} for a lattice vector u."""

    u: Tuple[int, ...]

    @property
    def plus(self) -> Tuple[int, ...]:
        return tuple(max(v, 0) for v in self.u)

    @property
    def minus(self) -> Tuple[int, ...]:
        return tuple(max(-v, 0) for v in self.u)


def kernel_lattice(grading: Grading) -> KernelLattice:
    """Integer kernel of the degree matrix, torsion rows augmented by m_j * e_j."""
    return _kernel_lattice(grading)


@lru_cache(maxsize=256)
def _kernel_lattice(grading: Grading) -> KernelLattice:
    n, k = grading.n, len(grading.moduli)
    if grading.width == 0:
        basis = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return KernelLattice(n, basis)
    rows = []
    for r in range(grading.width):
        slack = [0] * k
        if r >= grading.free_rank:
            slack[r - grading.free_rank] = grading.moduli[r - grading.free_rank]
        rows.append([col[r] for col in grading.columns] + slack)
    K = kernel(np.array(rows, dtype=object))
    basis = tuple(tuple(int(v) for v in K[:n, j]) for j in range(K.shape[1]))
    basis = tuple(b for b in basis if any(b))
    for b in basis:
        assert _deg_vector(grading, b) == grading.zero
    return KernelLattice(n, basis)


def _deg_vector(grading: Grading, u: Sequence[int]) -> Degree:
    plus = tuple(max(v, 0) for v in u)
    minus = tuple(max(-v, 0) for v in u)
    return grading.sub(_deg(grading, plus), _deg(grading, minus))


# ---------------------------
# Graver basis by completion
# ---------------------------
def conformal_le(g: Sequence[int], v: Sequence[int]) -> bool:
    """g is sign-compatible with v and |g_i| <= |v_i| everywhere."""
    for x, y in zip(g, v):
        if x == 0:
            continue
        if x * y <= 0 or abs(x) > abs(y):
            return False
    return True


def _normal_form(s, G):
    reduced = True
    while reduced and any(s):
        reduced = False
        for g in G:
            if conformal_le(g, s):
                s = tuple(x - y for x, y in zip(s, g))
                reduced = True
                break
    return s


def _canonical_sign(u: Tuple[int, ...]) -> Tuple[int, ...]:
    first = next(v for v in u if v)
    return u if first > 0 else tuple(-v for v in u)


def graver_basis(L: KernelLattice, caps: Caps = DEFAULT_CAPS) -> List[Binomial]:
    """Sign-compatibly minimal nonzero vectors of the lattice, one per +/- pair."""
    return list(_graver(L, caps))


@lru_cache(maxsize=256)
def _graver(L: KernelLattice, caps: Caps) -> Tuple[Binomial, ...]:
    G = []
    for b in L.basis:
        for v in (b, tuple(-x for x in b)):
            if v not in G:
                G.append(v)
    pending = [tuple(x + y for x, y in zip(f, g)) for f, g in itertools.combinations(G, 2)]
    while pending:
        s = pending.pop()
        f = _normal_form(s, G)
        if any(f):
            pending.extend(tuple(x + y for x, y in zip(f, g)) for g in G)
            G.append(f)
            if len(G) > caps.graver_cap:
                raise CapExceeded(f"Graver completion exceeded graver_cap={caps.graver_cap}")
    minimal = [v for v in G if not any(w != v and conformal_le(w, v) for w in G)]
    unique = sorted({_canonical_sign(v) for v in minimal}, key=lambda u: (sum(map(abs, u)), tuple(-x for x in u)))
    logger.info("Graver basis: %d elements for a lattice of rank %d", len(unique), len(L.basis))
    return tuple(Binomial(u) for u in unique)


def graver_degrees(grading: Grading, gb: Sequence[Binomial]) -> List[Degree]:
    return sorted({_deg(grading, b.plus) for b in gb})


# ---------------------------
# Degree predicates
# ---------------------------
def is_prime_degree(grading: Grading, a: Sequence[int], box: Optional[FiberBox] = None,
                    caps: Caps = DEFAULT_CAPS) -> bool:
    """No variable divides every monomial of degree a."""
    a = grading.reduce(a)
    if box is not None:
        monomials = fiber(grading, a, box, caps).monomials
        return bool(monomials) and all(any(u[i] == 0 for u in monomials) for i in range(grading.n))
    if not semigroup_contains(grading, a, caps=caps):
        return False
    for i in range(grading.n):
        others = tuple(j for j in range(grading.n) if j != i)
        if not semigroup_contains(grading.restrict(others), a, caps=caps):
            return False
    return True


def _rational_rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank()


def polyhedron_vertices(grading: Grading, a: Degree) -> List[Tuple[Fraction, ...]]:
    """Vertices of {u >= 0 : free part of deg(u) = a}, by basic feasible solutions."""
    phi = [[col[k] for col in grading.columns] for k in range(grading.free_rank)]
    target = list(grading.free_part(a))
    rank = _rational_rank(phi)
    vertices = set()
    for basis in itertools.combinations(range(grading.n), rank):
        sub = sympy.Matrix([[row[j] for j in basis] for row in phi]) if rank else sympy.zeros(len(phi), 0)
        if rank and sub.rank() < rank:
            continue
        if rank:
            # rows of phi may be dependent; solve in the least-squares sense exactly
            solution, params = sub.gauss_jordan_solve(sympy.Matrix(target))
            if params.shape[0]:
                continue
        elif any(target):
            continue
        else:
            solution = sympy.zeros(0, 1)
        u = [Fraction(0)] * grading.n
        for j, value in zip(basis, solution):
            u[j] = Fraction(int(value.p), int(value.q))
        if all(v >= 0 for v in u):
            vertices.add(tuple(u))
    return sorted(vertices)


def recession_rays(grading: Grading) -> List[Tuple[int, ...]]:
    """Extreme rays of {u >= 0 : free part of deg(u) = 0}, primitive integer vectors."""
    phi = [[col[k] for col in grading.columns] for k in range(grading.free_rank)]
    rank = _rational_rank(phi)
    rays = set()
    for size in range(1, rank + 2):
        for support in itertools.combinations(range(grading.n), size):
            sub = sympy.Matrix([[row[j] for j in support] for row in phi]) if phi else sympy.zeros(0, size)
            null = sub.nullspace() if phi else [sympy.eye(size)[:, i] for i in range(size)]
            if len(null) != 1:
                continue
            v = list(null[0])
            if any(x == 0 for x in v):
                continue
            if all(x < 0 for x in v):
                v = [-x for x in v]
            if not all(x > 0 for x in v):
                continue
            denominators = sympy.ilcm(*[sympy.Rational(x).q for x in v])
            ints = [int(x * denominators) for x in v]
            g = sympy.igcd(*ints)
            ray = [0] * grading.n
            for j, x in zip(support, ints):
                ray[j] = x // g
            rays.add(tuple(ray))
    return sorted(rays)


def is_integral_degree(grading: Grading, a: Sequence[int]) -> bool:
    """The fiber polytope equals the convex hull of the monomials of degree a."""
    if grading.free_rank < 1:
        raise ProblemValidationError("integrality needs free rank at least one")
    a = grading.reduce(a)
    vertices = polyhedron_vertices(grading, a)
    if not vertices:
        logger.info("degree %s: empty polyhedron", a)
        return False
    for vertex in vertices:
        if any(v.denominator != 1 for v in vertex):
            return False
        if _deg(grading, tuple(int(v) for v in vertex)) != a:
            return False
    order = 1
    for m in grading.moduli:
        order = sympy.ilcm(order, m)
    for ray in recession_rays(grading):
        if not any(_deg(grading, tuple(k * v for v in ray)) == grading.zero for k in range(1, int(order) + 1)):
            return False
    return True


def is_unimodular(grading: Grading) -> bool:
    """All nonzero maximal minors of a basis matrix of M agree in absolute value."""
    basis = kernel_lattice(grading).basis
    if not basis:
        return True
    rank = len(basis)
    values = set()
    for cols in itertools.combinations(range(grading.n), rank):
        det = sympy.Matrix([[row[j] for j in cols] for row in basis]).det()
        if det != 0:
            values.add(abs(int(det)))
    return len(values) <= 1


@dataclass(frozen=True)
class SupernormalEntry:
    degree: Degree
    prime: bool
    integral: bool

    @property
    def violation(self) -> bool:
        return self.prime and not self.integral


def supernormal_on(grading: Grading, degrees: Sequence[Sequence[int]],
                   caps: Caps = DEFAULT_CAPS) -> List[SupernormalEntry]:
    report = []
    for a in degrees:
        a = grading.reduce(a)
        prime = is_prime_degree(grading, a, caps=caps)
        integral = is_integral_degree(grading, a) if semigroup_contains(grading, a, caps=caps) else False
        report.append(SupernormalEntry(a, prime, integral))
    return report
