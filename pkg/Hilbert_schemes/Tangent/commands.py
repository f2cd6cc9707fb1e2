import logging
from typing import Any, Dict

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, open_problem, overrides_from, problem_options
from Hilbert_schemes.Enumeration.commands import ideals_for
from Hilbert_schemes.Monomials.MonomialIdeals import minimalize
from Hilbert_schemes.Tangent.TangentSpace import TangentProblem, tangent_dimension

logger = logging.getLogger(__name__)


def tangent_task(loaded: LoadedProblem) -> Dict[str, Any]:
    """Tangent dimension at the task's ideal, or at every enumerated ideal."""
    grading = loaded.require_grading()
    if loaded.task.ideal is not None:
        ideals = [minimalize(loaded.task.ideal, grading.n)]
    else:
        _, ideals = ideals_for(loaded)
    rows = []
    for I in ideals:
        result = tangent_dimension(TangentProblem(I, grading, loaded.h), loaded.box, loaded.caps)
        rows.append({"ideal": I.to_list(), **result._asdict()})
    return {
        "points": rows,
        "distinct_dimensions": sorted({r["dimension"] for r in rows}),
        "summary": [{**r, "ideal": str(r["ideal"])} for r in rows],
    }


@click.command("tangent")
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@problem_options
def tangent_command(problem, out, fmt, **options):
    """Zariski tangent space dimension at monomial ideals."""
    loaded = open_problem(problem, **overrides_from(options))
    emit("tangent", loaded, tangent_task(loaded), out, fmt)
