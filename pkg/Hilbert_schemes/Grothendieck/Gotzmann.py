import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

import sympy
from sympy import QQ

from Hilbert_schemes.Exceptions import NoRepresentation, ProblemValidationError
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec, TailKind
from Hilbert_schemes.Equations.Emitters import (EquationSet, bayer_equations, fitting_equations_stiefel,
                                                quadratic_equations)
from Hilbert_schemes.GradingCore.Gradings import Grading
from Hilbert_schemes.Monomials.MonomialIdeals import MonomialIdeal
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)

d = sympy.Symbol("d")


class Flavor(str, Enum):
    GOTZMANN_PAIR = "gotzmann-pair"
    IARROBINO_KLEIMAN = "iarrobino-kleiman"
    BAYER = "bayer"


@dataclass(frozen=True)
class HilbertPolynomial:
    """g(d) with rational coefficients, for subschemes of projective (n-1)-space."""

    poly: sympy.Poly
    n: int

    @classmethod
    def parse(cls, text: str, n: int) -> "HilbertPolynomial":
        try:
            expr = sympy.sympify(text, locals={"d": d})
        except (sympy.SympifyError, TypeError, SyntaxError):
            raise ProblemValidationError(f"cannot read Hilbert polynomial '{text}'")
        if expr.free_symbols - {d}:
            raise ProblemValidationError(f"Hilbert polynomial may only use the variable d, got '{text}'")
        return cls(sympy.Poly(expr, d, domain=QQ), n)

    @classmethod
    def constant(cls, m: int, n: int) -> "HilbertPolynomial":
        return cls(sympy.Poly(m, d, domain=QQ), n)

    def __post_init__(self):
        if self.n < 1:
            raise ProblemValidationError("the ambient ring needs at least one variable", n=self.n)

    def __call__(self, value: int) -> Fraction:
        result = self.poly.eval(value)
        return Fraction(int(result.p), int(result.q))

    @property
    def degree(self) -> int:
        return self.poly.degree() if not self.poly.is_zero else 0

    def coefficients(self) -> Tuple[Fraction, ...]:
        """Power-basis coefficients, constant term first."""
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(self.poly.all_coeffs())]
        return tuple(coeffs)

    def check_integer_valued(self, start: int, window: Optional[int] = None) -> None:
        window = window if window is not None else self.degree + 2
        for value in range(start, start + window):
            v = self(value)
            if v.denominator != 1 or v < 0:
                raise ProblemValidationError(f"g({value}) = {v} is not a nonnegative integer")

    def __str__(self) -> str:
        return str(self.poly.as_expr())


def _binomial_poly(shift: int, b: int) -> sympy.Poly:
    """C(d + shift, b) as a polynomial in d."""
    numerator = sympy.prod([d + shift - j for j in range(b)])
    return sympy.Poly(numerator / sympy.factorial(b), d, domain=QQ)


def macaulay_representation(g: HilbertPolynomial, max_terms: int = 10000) -> List[int]:
    """b_1 >= ... >= b_s with g(d) = sum_i C(d + b_i - i + 1, b_i), extracted greedily."""
    remainder = g.poly
    exponents: List[int] = []
    while not remainder.is_zero:
        b = remainder.degree()
        lead = remainder.LC()
        if lead < 0:
            raise NoRepresentation(f"{g} has no Macaulay representation (negative leading term)")
        if exponents and b > exponents[-1]:
            raise NoRepresentation(f"{g} has no Macaulay representation (degree went up)")
        if len(exponents) >= max_terms:
            raise NoRepresentation(f"Macaulay representation of {g} exceeds {max_terms} summands")
        i = len(exponents) + 1
        remainder = remainder - _binomial_poly(b - i + 1, b)
        exponents.append(b)
    return exponents


def gotzmann_number(g: HilbertPolynomial) -> int:
    """Number of summands in the Macaulay representation of g."""
    d0 = len(macaulay_representation(g))
    logger.info("Gotzmann number of %s is %d", g, d0)
    return d0


def hilbert_function_from_polynomial(g: HilbertPolynomial, overrides: Optional[Dict[int, int]] = None) -> HilbertSpec:
    """C(n+d-1, d) below the Gotzmann number, g(d) from it on; table on 0..d0+1."""
    d0 = gotzmann_number(g)
    g.check_integer_valued(d0)
    table = {}
    for value in range(d0 + 2):
        table[(value,)] = comb(g.n + value - 1, value) if value < d0 else int(g(value))
    for value, h in (overrides or {}).items():
        table[(int(value),)] = int(h)
    return HilbertSpec.from_mapping(table, tail=TailKind.POLYNOMIAL, coefficients=g.coefficients(), threshold=d0)


# ---------------------------
# Regularity oracle
# ---------------------------
def saturated_lex_ideal(m: int, n: int) -> MonomialIdeal:
    """The saturated lex ideal of m points: <x1, ..., x_{n-2}, x_{n-1}^m>."""
    if n < 2 or m < 1:
        raise ProblemValidationError("lex ideal of points needs n >= 2 and m >= 1", n=n, m=m)
    gens = [tuple(int(i == j) for j in range(n)) for i in range(n - 2)]
    gens.append(tuple(m if j == n - 2 else 0 for j in range(n)))
    return MonomialIdeal(n, tuple(sorted(gens, reverse=True)))


def lex_regularity(I: MonomialIdeal) -> int:
    """Regularity of a strongly stable ideal, its top generator degree."""
    return max((sum(g) for g in I.generators), default=0)


# ---------------------------
# Grothendieck equations
# ---------------------------
def grothendieck_equations(g: HilbertPolynomial, flavor: Flavor, caps: Caps = DEFAULT_CAPS) -> EquationSet:
    h = hilbert_function_from_polynomial(g)
    d0 = h.threshold
    grading = Grading.standard(g.n)
    h0, h1 = h.value(grading, (d0,)), h.value(grading, (d0 + 1,))
    logger.info("Grothendieck equations (%s) for g=%s, n=%d: d0=%d, h=(%d,%d)", flavor.value, g, g.n, d0, h0, h1)
    if flavor == Flavor.GOTZMANN_PAIR:
        result = quadratic_equations(grading, h, [(d0,), (d0 + 1,)], caps=caps)
    elif flavor == Flavor.IARROBINO_KLEIMAN:
        result = fitting_equations_stiefel(g.n, d0, h0, h1, caps)
    else:
        result = bayer_equations(g.n, d0, h0, h1, caps)
    result.meta.update({"flavor": flavor.value, "polynomial": str(g), "gotzmann_number": d0})
    return result
