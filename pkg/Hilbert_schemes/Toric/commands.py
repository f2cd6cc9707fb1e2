import logging
from typing import Any, Dict

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, open_problem, overrides_from, problem_options
from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.Toric.Lattices import (graver_basis, graver_degrees, is_integral_degree, is_prime_degree,
                                            is_unimodular, kernel_lattice, supernormal_on)

logger = logging.getLogger(__name__)

ACTIONS = ("graver", "degrees", "prime", "integral", "unimodular", "supernormal")


def _degrees(loaded: LoadedProblem):
    if not loaded.task.degrees:
        raise ProblemValidationError(f"toric {loaded.task.action} needs a list of degrees")
    return [loaded.require_grading().reduce(a) for a in loaded.task.degrees]


def toric_task(loaded: LoadedProblem) -> Dict[str, Any]:
    grading, caps, action = loaded.require_grading(), loaded.caps, loaded.task.action
    if action == "graver":
        lattice = kernel_lattice(grading)
        binomials = graver_basis(lattice, caps)
        return {"lattice": [list(b) for b in lattice.basis], "binomials": [list(b.u) for b in binomials],
                "count": len(binomials),
                "summary": [{"u": str(list(b.u)), "plus": str(list(b.plus)), "minus": str(list(b.minus))}
                            for b in binomials]}
    if action == "degrees":
        degrees = graver_degrees(grading, graver_basis(kernel_lattice(grading), caps))
        return {"degrees": [list(a) for a in degrees], "summary": [{"degree": str(list(a))} for a in degrees]}
    if action == "prime":
        rows = [{"degree": list(a), "prime": is_prime_degree(grading, a, loaded.box, caps)} for a in _degrees(loaded)]
        return {"degrees": rows, "summary": [{**r, "degree": str(r["degree"])} for r in rows]}
    if action == "integral":
        rows = [{"degree": list(a), "integral": is_integral_degree(grading, a)} for a in _degrees(loaded)]
        return {"degrees": rows, "summary": [{**r, "degree": str(r["degree"])} for r in rows]}
    if action == "unimodular":
        return {"unimodular": is_unimodular(grading)}
    if action == "supernormal":
        entries = supernormal_on(grading, _degrees(loaded), caps)
        rows = [{"degree": list(e.degree), "prime": e.prime, "integral": e.integral, "violation": e.violation}
                for e in entries]
        return {"degrees": rows, "violations": sum(r["violation"] for r in rows),
                "summary": [{**r, "degree": str(r["degree"])} for r in rows]}
    raise ProblemValidationError(f"unknown toric action '{action}'", choices=ACTIONS)


@click.command("toric")
@click.argument("action", type=click.Choice(ACTIONS))
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@problem_options
def toric_command(action, problem, out, fmt, **options):
    """Graver bases and the degree predicates of the lattice ideal."""
    loaded = open_problem(problem, **overrides_from(options))
    loaded = loaded._replace(problem=loaded.problem.model_copy(
        update={"task": loaded.task.model_copy(update={"action": action})}))
    emit(f"toric {action}", loaded, toric_task(loaded), out, fmt)
