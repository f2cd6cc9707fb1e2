import logging
from typing import Any, Dict

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, adhoc_problem, overrides_from, problem_options
from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.Grothendieck.Gotzmann import (HilbertPolynomial, hilbert_function_from_polynomial,
                                                   lex_regularity, macaulay_representation, saturated_lex_ideal)

logger = logging.getLogger(__name__)


def gotzmann_task(loaded: LoadedProblem) -> Dict[str, Any]:
    task = loaded.task
    if task.polynomial is None or task.n is None:
        raise ProblemValidationError("gotzmann needs a polynomial and n")
    g = HilbertPolynomial.parse(task.polynomial, task.n)
    exponents = macaulay_representation(g)
    h = hilbert_function_from_polynomial(g)
    result = {
        "polynomial": str(g),
        "n": task.n,
        "macaulay": exponents,
        "gotzmann_number": len(exponents),
        "hilbert_function": h.to_dict(),
    }
    if g.degree == 0 and task.n >= 2 and g(0) >= 1:
        # points: the saturated lex ideal gives an independent value
        result["lex_regularity"] = lex_regularity(saturated_lex_ideal(int(g(0)), task.n))
    result["summary"] = [{"polynomial": str(g), "n": task.n, "gotzmann_number": len(exponents)}]
    return result


@click.command("gotzmann")
@click.option("--poly", "polynomial", required=True, help="Hilbert polynomial in d, e.g. '3*d + 1'.")
@click.option("--n", "n_vars", type=int, required=True, help="Number of variables of the ambient ring.")
@problem_options
def gotzmann_command(polynomial, n_vars, out, fmt, **options):
    """Gotzmann number and the Hilbert function it induces."""
    loaded = adhoc_problem({"command": "gotzmann", "polynomial": polynomial, "n": n_vars}, **overrides_from(options))
    emit("gotzmann", loaded, gotzmann_task(loaded), out, fmt)
