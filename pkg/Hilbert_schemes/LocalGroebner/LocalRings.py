import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import sympy

from Hilbert_schemes.Exceptions import InternalAssertion, NonterminationGuard, ProblemValidationError
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


class TermOrder(str, Enum):
    LEX = "lex"
    GRLEX = "grlex"

    def key(self, e: Exponent):
        return e if self == TermOrder.LEX else (sum(e), e)


# ---------------------------
# Coefficient rings, truncated at P^m
# ---------------------------
class LocalRingModel:
    """A local ring (R, P) worked modulo P^m. Scalars are hashable and kept reduced."""

    kind = "abstract"

    def __init__(self, m: int):
        if m < 1:
            raise ProblemValidationError("truncation m must be at least 1", m=m)
        self.m = m

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def ord(self, a) -> int:
        """Order of a; zero has order m."""
        raise NotImplementedError

    def parse(self, value):
        raise NotImplementedError

    def to_json(self, a):
        raise NotImplementedError

    def uniformizer(self):
        raise NotImplementedError

    def random_scalar(self, rng: random.Random):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def describe(self) -> str:
        return f"{self.kind} mod P^{self.m}"


class IntegersAtPrime(LocalRingModel):
    """Z localized at p, as integers modulo p^m."""

    kind = "zp"

    def __init__(self, p: int, m: int):
        super().__init__(m)
        if not sympy.isprime(p):
            raise ProblemValidationError(f"{p} is not prime")
        self.p = p
        self.modulus = p ** m

    def zero(self):
        return 0

    def one(self):
        return 1 % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def ord(self, a) -> int:
        if a == 0:
            return self.m
        k = 0
        while a % self.p == 0:
            a //= self.p
            k += 1
        return k

    def parse(self, value):
        try:
            q = Fraction(value)
        except (TypeError, ValueError):
            raise ProblemValidationError(f"coefficient '{value}' is not a rational number")
        if q.denominator % self.p == 0:
            raise ProblemValidationError(f"coefficient {q} is not in Z localized at {self.p}")
        return (q.numerator * pow(q.denominator, -1, self.modulus)) % self.modulus

    def to_json(self, a):
        return str(a)

    def uniformizer(self):
        return self.p % self.modulus

    def random_scalar(self, rng: random.Random):
        return rng.randrange(self.modulus)

    def describe(self) -> str:
        return f"Z_({self.p}) mod {self.p}^{self.m}"


class PowerSeriesQ(LocalRingModel):
    """Q[t] localized at t, as coefficient tuples modulo t^m."""

    kind = "qt"

    def zero(self):
        return (Fraction(0),) * self.m

    def one(self):
        return (Fraction(1),) + (Fraction(0),) * (self.m - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mul(self, a, b):
        out = [Fraction(0)] * self.m
        for i, x in enumerate(a):
            if x:
                for j in range(self.m - i):
                    out[i + j] += x * b[j]
        return tuple(out)

    def neg(self, a):
        return tuple(-x for x in a)

    def ord(self, a) -> int:
        return next((i for i, x in enumerate(a) if x), self.m)

    def parse(self, value):
        values = value if isinstance(value, (list, tuple)) else [value]
        try:
            coeffs = [Fraction(v) for v in values]
        except (TypeError, ValueError):
            raise ProblemValidationError(f"coefficient '{value}' is not a list of rationals")
        coeffs = (coeffs + [Fraction(0)] * self.m)[:self.m]
        return tuple(coeffs)

    def to_json(self, a):
        return [str(x) for x in a]

    def uniformizer(self):
        return tuple(Fraction(int(i == 1)) for i in range(self.m))

    def random_scalar(self, rng: random.Random):
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(self.m))

    def describe(self) -> str:
        return f"Q[t]_(t) mod t^{self.m}"


def parse_model(text: str, m: int) -> LocalRingModel:
    """'zp:P' or 'qt'."""
    if text == "qt":
        return PowerSeriesQ(m)
    if text.startswith("zp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ProblemValidationError(f"model '{text}' needs an integer prime")
        return IntegersAtPrime(p, m)
    raise ProblemValidationError(f"unknown local ring model '{text}'")


# ---------------------------
# Polynomials over the model
# ---------------------------
class InitialTerm(NamedTuple):
    coefficient: object
    monomial: Exponent
    order: int


@dataclass
class LocalPoly:
    model: LocalRingModel
    n: int
    terms: Dict[Exponent, object] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(e): c for e, c in self.terms.items() if not self.model.is_zero(c)}
        for e in self.terms:
            if len(e) != self.n or min(e, default=0) < 0:
                raise ProblemValidationError("bad exponent vector", exponent=e, n=self.n)

    @classmethod
    def from_terms(cls, model: LocalRingModel, n: int, terms: Sequence[Tuple[object, Sequence[int]]]) -> "LocalPoly":
        out: Dict[Exponent, object] = {}
        for coeff, e in terms:
            e = tuple(e)
            out[e] = model.add(out.get(e, model.zero()), model.parse(coeff))
        return cls(model, n, out)

    @classmethod
    def monomial(cls, model: LocalRingModel, e: Sequence[int], coeff=None) -> "LocalPoly":
        return cls(model, len(e), {tuple(e): model.one() if coeff is None else coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LocalPoly") -> "LocalPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = self.model.add(out.get(e, self.model.zero()), c)
        return LocalPoly(self.model, self.n, out)

    def __neg__(self) -> "LocalPoly":
        return LocalPoly(self.model, self.n, {e: self.model.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "LocalPoly") -> "LocalPoly":
        return self + (-other)

    def shifted(self, coeff, shift: Sequence[int]) -> "LocalPoly":
        """coeff * x^shift * self."""
        out = {}
        for e, c in self.terms.items():
            out[tuple(x + y for x, y in zip(e, shift))] = self.model.mul(coeff, c)
        return LocalPoly(self.model, self.n, out)

    def __mul__(self, other: "LocalPoly") -> "LocalPoly":
        total = LocalPoly(self.model, self.n)
        for e, c in other.terms.items():
            total = total + self.shifted(c, e)
        return total

    def to_json(self) -> List[dict]:
        return [{"coeff": self.model.to_json(c), "monomial": list(e)} for e, c in sorted(self.terms.items(), reverse=True)]


def _pair_key(model: LocalRingModel, order: TermOrder, coeff, e: Exponent):
    return -model.ord(coeff), order.key(e)


def initial_term(p: LocalPoly, order: TermOrder = TermOrder.LEX) -> InitialTerm:
    """The term with the lexicographically greatest (-ord(a), e)."""
    if p.is_zero():
        raise ProblemValidationError("the zero polynomial has no initial term")
    e, c = max(p.terms.items(), key=lambda t: _pair_key(p.model, order, t[1], t[0]))
    return InitialTerm(c, e, p.model.ord(c))


def _require_monic(f: LocalPoly, order: TermOrder) -> InitialTerm:
    init = initial_term(f, order)
    if init.coefficient != f.model.one():
        raise ProblemValidationError("initial coefficient must be 1", monomial=init.monomial)
    return init


def s_polynomial(f: LocalPoly, g: LocalPoly, order: TermOrder = TermOrder.LEX) -> LocalPoly:
    """x^u f - x^v g with x^u init(f) = x^v init(g) = lcm."""
    ef = _require_monic(f, order).monomial
    eg = _require_monic(g, order).monomial
    L = tuple(max(x, y) for x, y in zip(ef, eg))
    one = f.model.one()
    u = tuple(x - y for x, y in zip(L, ef))
    v = tuple(x - y for x, y in zip(L, eg))
    return f.shifted(one, u) - g.shifted(one, v)


class Reduction(NamedTuple):
    remainder: LocalPoly
    reducible: bool
    certificate: List[Tuple[object, Exponent, int]]


def reduce(p: LocalPoly, F: Sequence[LocalPoly], order: TermOrder = TermOrder.LEX,
           caps: Caps = DEFAULT_CAPS) -> Reduction:
    """Division by F inside the filtration of p's initial pair, modulo P^m.

    Only b x^h f with (-ord b, h + e_f) at most the current initial pair are used;
    terms no initial monomial divides move to the remainder.
    """
    inits = [_require_monic(f, order).monomial for f in F]
    model = p.model
    remainder = LocalPoly(model, p.n)
    certificate = []
    if p.is_zero():
        return Reduction(remainder, True, certificate)
    first = initial_term(p, order)
    bound = _pair_key(model, order, first.coefficient, first.monomial)
    steps = 0
    while not p.is_zero():
        steps += 1
        if steps > caps.max_branches:
            raise NonterminationGuard("reduction did not terminate within max_branches steps")
        init = initial_term(p, order)
        if _pair_key(model, order, init.coefficient, init.monomial) > bound:
            raise InternalAssertion("reduction left the filtration of the input", monomial=init.monomial)
        k = next((k for k, e in enumerate(inits) if all(x <= y for x, y in zip(e, init.monomial))), None)
        if k is None:
            term = LocalPoly.monomial(model, init.monomial, init.coefficient)
            remainder = remainder + term
            p = p - term
            continue
        shift = tuple(y - x for x, y in zip(inits[k], init.monomial))
        certificate.append((init.coefficient, shift, k))
        p = p - F[k].shifted(init.coefficient, shift)
    return Reduction(remainder, remainder.is_zero(), certificate)


class BuchbergerResult(NamedTuple):
    ok: bool
    failing_pair: Optional[Tuple[int, int]]
    remainder: Optional[LocalPoly]


def buchberger_check(F: Sequence[LocalPoly], order: TermOrder = TermOrder.LEX,
                     pairs: Optional[Sequence[Tuple[int, int]]] = None, caps: Caps = DEFAULT_CAPS) -> BuchbergerResult:
    """Every selected S-polynomial reduces to zero modulo P^m."""
    pairs = list(pairs) if pairs is not None else list(itertools.combinations(range(len(F)), 2))
    for i, j in pairs:
        S = s_polynomial(F[i], F[j], order)
        result = reduce(S, F, order, caps)
        if not result.reducible:
            logger.info("S-polynomial of pair (%d, %d) leaves remainder %s", i, j, result.remainder.to_json())
            return BuchbergerResult(False, (i, j), result.remainder)
    return BuchbergerResult(True, None, None)


def random_ideal_element(F: Sequence[LocalPoly], rng: random.Random, max_shift: int = 2,
                         terms: int = 3) -> LocalPoly:
    model = F[0].model
    total = LocalPoly(model, F[0].n)
    for f in F:
        for _ in range(terms):
            shift = tuple(rng.randint(0, max_shift) for _ in range(f.n))
            total = total + f.shifted(model.random_scalar(rng), shift)
    return total


def initial_in_ideal(p: LocalPoly, F: Sequence[LocalPoly], order: TermOrder = TermOrder.LEX) -> bool:
    """init(p) lies in the ideal spanned by the initial terms of F."""
    e = initial_term(p, order).monomial
    return any(all(x <= y for x, y in zip(initial_term(f, order).monomial, e)) for f in F)


def parse_generators(model: LocalRingModel, n: int, data: Sequence[Sequence[dict]]) -> List[LocalPoly]:
    polys = []
    for raw in data:
        terms = []
        for term in raw:
            if "coeff" not in term or "monomial" not in term:
                raise ProblemValidationError("terms need 'coeff' and 'monomial'")
            if len(term["monomial"]) != n:
                raise ProblemValidationError("monomial length differs from n", monomial=term["monomial"])
            terms.append((term["coeff"], term["monomial"]))
        polys.append(LocalPoly.from_terms(model, n, terms))
    return polys
