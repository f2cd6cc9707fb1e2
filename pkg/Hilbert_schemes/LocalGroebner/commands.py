import logging
from typing import Any, Dict

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, open_problem, overrides_from, problem_options
from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.LocalGroebner.LocalRings import TermOrder, buchberger_check, parse_generators, parse_model

logger = logging.getLogger(__name__)


def local_gb_task(loaded: LoadedProblem) -> Dict[str, Any]:
    task = loaded.task
    if task.model is None or task.m is None or task.n is None or not task.generators:
        raise ProblemValidationError("local-gb-check needs model, m, n and generators")
    model = parse_model(task.model, task.m)
    try:
        order = TermOrder(task.order)
    except ValueError:
        raise ProblemValidationError(f"unknown term order '{task.order}'")
    F = parse_generators(model, task.n, task.generators)
    pairs = [tuple(p) for p in task.pairs] if task.pairs is not None else None
    result = buchberger_check(F, order, pairs, loaded.caps)
    return {
        "model": model.describe(),
        "order": order.value,
        "groebner": result.ok,
        "failing_pair": list(result.failing_pair) if result.failing_pair else None,
        "remainder": result.remainder.to_json() if result.remainder is not None else None,
        "summary": [{"model": model.describe(), "generators": len(F), "groebner": result.ok,
                     "failing_pair": str(result.failing_pair)}],
    }


@click.command("local-gb-check")
@click.option("--model", default=None, help="zp:PRIME or qt.")
@click.option("--m", "m", type=int, default=None, help="Truncation: work modulo P^m.")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@problem_options
def local_gb_command(model, m, input_path, out, fmt, **options):
    """Buchberger criterion for generators over a truncated local ring."""
    loaded = open_problem(input_path, **overrides_from(options))
    updates = {k: v for k, v in (("model", model), ("m", m)) if v is not None}
    if updates:
        loaded = loaded._replace(problem=loaded.problem.model_copy(
            update={"task": loaded.task.model_copy(update=updates)}))
    emit("local-gb-check", loaded, local_gb_task(loaded), out, fmt)
