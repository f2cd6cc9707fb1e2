import logging
from typing import Any, Dict, Optional

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import (LoadedProblem, adhoc_problem, open_problem, overrides_from,
                                              problem_options)
from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.Equations.Emitters import (EquationSet, chart_equations, determinantal_equations,
                                                quadratic_equations, toric_binomials)
from Hilbert_schemes.Grothendieck.Gotzmann import Flavor, HilbertPolynomial, grothendieck_equations
from Hilbert_schemes.Monomials.MonomialIdeals import minimalize, standard_monomials

logger = logging.getLogger(__name__)

EMITTERS = ("quadratic", "fitting", "bayer", "toric", "chart")
# emitters that read as a Grothendieck flavor when only points and n are given
POINT_FLAVORS = {"quadratic": Flavor.GOTZMANN_PAIR, "fitting": Flavor.IARROBINO_KLEIMAN, "bayer": Flavor.BAYER}


def _require_D(loaded: LoadedProblem):
    if loaded.task.D is None:
        raise ProblemValidationError(f"emitter '{loaded.task.emitter}' needs D")
    return loaded.task.D


def _chart_basis(loaded: LoadedProblem, D):
    grading, task = loaded.require_grading(), loaded.task
    if task.chart_basis is not None:
        return {grading.reduce(entry.degree): [tuple(m) for m in entry.monomials] for entry in task.chart_basis}
    if task.ideal is not None:
        I = minimalize(task.ideal, grading.n)
        return {grading.reduce(a): standard_monomials(I, grading, a, loaded.box, loaded.caps) for a in D}
    raise ProblemValidationError("chart equations need a chart_basis or an ideal")


def _grothendieck(loaded: LoadedProblem, flavor: Flavor) -> EquationSet:
    task = loaded.task
    if task.n is None:
        raise ProblemValidationError("Grothendieck equations need n")
    g = HilbertPolynomial.parse(task.polynomial, task.n) if task.polynomial else HilbertPolynomial.constant(task.points, task.n)
    return grothendieck_equations(g, flavor, loaded.caps)


def equations_task(loaded: LoadedProblem) -> Dict[str, Any]:
    task = loaded.task
    emitter = task.emitter or "quadratic"
    if emitter not in EMITTERS:
        raise ProblemValidationError(f"unknown emitter '{emitter}'", choices=EMITTERS)
    if task.flavor is not None:
        equations = _grothendieck(loaded, Flavor(task.flavor))
    elif emitter in POINT_FLAVORS and (task.points is not None or task.polynomial is not None):
        equations = _grothendieck(loaded, POINT_FLAVORS[emitter])
    else:
        grading, caps, box = loaded.require_grading(), loaded.caps, loaded.box
        if emitter == "quadratic":
            equations = quadratic_equations(grading, loaded.require_h(), _require_D(loaded), box, caps)
        elif emitter == "fitting":
            if task.e is None:
                raise ProblemValidationError("the fitting emitter needs a target degree e")
            equations = determinantal_equations(grading, loaded.require_h(), _require_D(loaded), task.e, box, caps)
        elif emitter == "toric":
            equations = toric_binomials(grading, _require_D(loaded), box, caps)
        elif emitter == "chart":
            D = _require_D(loaded)
            equations = chart_equations(grading, loaded.require_h(), D, _chart_basis(loaded, D), caps)
        else:
            raise ProblemValidationError("the bayer emitter needs points (or a polynomial) and n")
    result = equations.to_dict()
    result["summary"] = [{"emitter": equations.emitter, "count": len(equations),
                          "by_term_count": str(equations.meta["by_term_count"])}]
    return result


@click.command("equations")
@click.argument("problem", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--emitter", type=click.Choice(EMITTERS), default=None)
@click.option("--points", type=int, default=None, help="Hilbert polynomial constant m (Grothendieck case).")
@click.option("--n", "n_vars", type=int, default=None, help="Number of variables (Grothendieck case).")
@problem_options
def equations_command(problem: Optional[str], emitter, points, n_vars, out, fmt, **options):
    """Emit quadratic, determinantal, Bayer, toric or chart equations."""
    overrides = overrides_from(options)
    if problem is None:
        if points is None or n_vars is None:
            raise click.UsageError("give a PROBLEM file or both --points and --n")
        loaded = adhoc_problem({"command": "equations", "emitter": emitter or "bayer", "points": points,
                                "n": n_vars}, **overrides)
    else:
        loaded = open_problem(problem, **overrides)
        updates = {k: v for k, v in (("emitter", emitter), ("points", points), ("n", n_vars)) if v is not None}
        if updates:
            loaded = loaded._replace(problem=loaded.problem.model_copy(
                update={"task": loaded.task.model_copy(update=updates)}))
    emit("equations", loaded, equations_task(loaded), out, fmt)
