import glob
import logging
import os
from typing import Any, Callable, Dict, List

import click
import pandas as pd

from Hilbert_schemes.Cli.Artifacts import to_jsonable
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, load_problem, read_problem
from Hilbert_schemes.Enumeration.commands import enumerate_task
from Hilbert_schemes.Equations.commands import equations_task
from Hilbert_schemes.Exceptions import HilbertSchemeError
from Hilbert_schemes.Grothendieck.commands import gotzmann_task
from Hilbert_schemes.LocalGroebner.commands import local_gb_task
from Hilbert_schemes.Settings import corpus_path
from Hilbert_schemes.Supportive.commands import supportive_task, very_supportive_task
from Hilbert_schemes.Tangent.commands import tangent_task
from Hilbert_schemes.Toric.commands import toric_task

logger = logging.getLogger(__name__)

TASKS: Dict[str, Callable[[LoadedProblem], Dict[str, Any]]] = {
    "enumerate": enumerate_task,
    "supportive": supportive_task,
    "very-supportive": very_supportive_task,
    "equations": equations_task,
    "gotzmann": gotzmann_task,
    "toric": toric_task,
    "tangent": tangent_task,
    "local-gb-check": local_gb_task,
}

_MISSING = object()


def lookup(result: Any, path: str) -> Any:
    """Dotted path into a result; integer parts index lists, `len` gives a length."""
    value = result
    for part in path.split("."):
        if part == "len" and isinstance(value, (list, dict)):
            value = len(value)
        elif isinstance(value, list) and part.lstrip("-").isdigit():
            index = int(part)
            if not -len(value) <= index < len(value):
                return _MISSING
            value = value[index]
        elif isinstance(value, dict) and part in value:
            value = value[part]
        else:
            return _MISSING
    return value


def compare(result: Dict[str, Any], expect: Dict[str, Any]) -> List[str]:
    failures = []
    for path, expected in expect.items():
        if path == "error":
            continue
        actual = lookup(result, path)
        if actual is _MISSING:
            failures.append(f"{path}: missing")
        elif actual != expected:
            failures.append(f"{path}: expected {expected!r}, got {actual!r}")
    return failures


def run_problem(path: str) -> Dict[str, Any]:
    """Run one problem file and compare against its `expect` block."""
    name = os.path.basename(path)
    expected_error = None
    try:
        problem, digest = read_problem(path)
        expected_error = problem.expect.get("error")
        task = TASKS.get(problem.task.command)
        if task is None:
            return {"problem": name, "command": problem.task.command, "passed": False,
                    "detail": "unknown command"}
        result = to_jsonable(task(load_problem(problem, digest)))
    except HilbertSchemeError as e:
        if expected_error is not None and expected_error == e.code:
            return {"problem": name, "command": "-", "passed": True, "detail": f"raised {e.code}"}
        logger.warning("problem %s failed with %s: %s", name, e.code, e.detail)
        return {"problem": name, "command": "-", "passed": False, "detail": f"{e.code}: {e.detail}"}
    except Exception as e:
        logger.exception("problem %s crashed", name)
        return {"problem": name, "command": "-", "passed": False, "detail": f"crash: {e}"}
    if expected_error is not None:
        return {"problem": name, "command": problem.task.command, "passed": False,
                "detail": f"expected {expected_error}, got a result"}
    failures = compare(result, problem.expect)
    return {"problem": name, "command": problem.task.command, "passed": not failures,
            "detail": "; ".join(failures) or "ok"}


def run_corpus(directory: str = corpus_path) -> pd.DataFrame:
    paths = sorted(glob.glob(os.path.join(directory, "*.json")))
    logger.info("running %d problems from %s", len(paths), directory)
    rows = [run_problem(path) for path in paths]
    return pd.DataFrame(rows, columns=["problem", "command", "passed", "detail"])


@click.command("corpus")
@click.argument("directory", required=False, type=click.Path(exists=True, file_okay=False))
def corpus_command(directory):
    """Run every shipped problem and compare it with its expected values."""
    frame = run_corpus(directory or corpus_path)
    click.echo(frame.to_string(index=False))
    passed = int(frame["passed"].sum()) if len(frame) else 0
    click.echo(f"{passed}/{len(frame)} passed")
    click.get_current_context().exit(0 if passed == len(frame) else 1)
