import logging
from typing import Any, Dict, Sequence

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, open_problem, overrides_from, problem_options
from Hilbert_schemes.Enumeration.IdealSearch import enumerate_admissible, enumerate_on
from Hilbert_schemes.GradingCore.Gradings import Degree, Grading
from Hilbert_schemes.Monomials.MonomialIdeals import MonomialIdeal, hilbert_value
from Hilbert_schemes.Settings import Caps

logger = logging.getLogger(__name__)


def ideal_record(I: MonomialIdeal, grading: Grading, degrees: Sequence[Degree], caps: Caps) -> Dict[str, Any]:
    return {
        "generators": I.to_list(),
        "hilbert": [{"degree": list(a), "value": hilbert_value(I, grading, a, caps=caps)} for a in degrees],
    }


def ideals_for(loaded: LoadedProblem):
    """C_D when the task names D, otherwise every ideal with Hilbert function h."""
    grading, h, task = loaded.require_grading(), loaded.require_h(), loaded.task
    if task.D is not None:
        D = sorted({grading.reduce(a) for a in task.D})
        return D, enumerate_on(grading, h, D, loaded.caps)
    ideals = enumerate_admissible(grading, h, seed=task.seed, caps=loaded.caps)
    return h.degrees(), ideals


def enumerate_task(loaded: LoadedProblem) -> Dict[str, Any]:
    grading = loaded.require_grading()
    degrees, ideals = ideals_for(loaded)
    records = [ideal_record(I, grading, degrees, loaded.caps) for I in ideals]
    return {
        "D": [list(a) for a in degrees] if loaded.task.D is not None else None,
        "count": len(ideals),
        "ideals": records,
        "summary": [{"ideal": str(r["generators"]), "colength": sum(v["value"] for v in r["hilbert"])}
                    for r in records],
    }


@click.command("enumerate")
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@problem_options
def enumerate_command(problem, out, fmt, **options):
    """Monomial ideals generated in degrees D with the prescribed Hilbert values."""
    loaded = open_problem(problem, **overrides_from(options))
    emit("enumerate", loaded, enumerate_task(loaded), out, fmt)
