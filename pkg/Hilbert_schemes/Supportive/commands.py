import logging
from typing import Any, Dict

import click

from Hilbert_schemes.Cli.Artifacts import emit
from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem, open_problem, overrides_from, problem_options
from Hilbert_schemes.Supportive.DegreeSets import (DegreeSetResult, SupportReport, SyzygyMode, check_conditions,
                                                   compute_supportive, compute_very_supportive)

logger = logging.getLogger(__name__)


def _mode(loaded: LoadedProblem) -> SyzygyMode:
    return SyzygyMode.EXACT if loaded.task.exact_syzygies else SyzygyMode.SUFFICIENT


def _result(report: SupportReport, computed: DegreeSetResult = None) -> Dict[str, Any]:
    out = {
        "D": report.D,
        "report": report,
        "supportive": report.is_supportive(),
        "very_supportive": report.is_very_supportive(),
        "summary": [{"D": str(report.D), "g": report.g.value, "h": report.h.value, "h_prime": report.h_prime.value,
                     "s": report.s.value, "s_mode": report.s_mode.value}],
    }
    if computed is not None:
        out["rounds"] = computed.rounds
        out["ideals"] = [I.to_list() for I in computed.ideals]
    return out


def supportive_task(loaded: LoadedProblem) -> Dict[str, Any]:
    """Checks the task's D, or computes a supportive set when none is given."""
    grading, h, task = loaded.require_grading(), loaded.require_h(), loaded.task
    if task.D is not None:
        return _result(check_conditions(grading, h, task.D, _mode(loaded), loaded.caps))
    computed = compute_supportive(grading, h, seed=task.seed, caps=loaded.caps)
    return _result(check_conditions(grading, h, computed.D, _mode(loaded), loaded.caps), computed)


def very_supportive_task(loaded: LoadedProblem) -> Dict[str, Any]:
    grading, h, task = loaded.require_grading(), loaded.require_h(), loaded.task
    computed = compute_very_supportive(grading, h, seed=task.seed if task.seed is not None else task.D,
                                       caps=loaded.caps)
    return _result(check_conditions(grading, h, computed.D, _mode(loaded), loaded.caps), computed)


@click.command("supportive")
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@problem_options
def supportive_command(problem, out, fmt, **options):
    """Check (g), (h), (h') and (s) for D, or compute a supportive set."""
    loaded = open_problem(problem, **overrides_from(options))
    emit("supportive", loaded, supportive_task(loaded), out, fmt)


@click.command("very-supportive")
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@problem_options
def very_supportive_command(problem, out, fmt, **options):
    """Compute a very supportive set, seeded by the task's D when present."""
    loaded = open_problem(problem, **overrides_from(options))
    emit("very-supportive", loaded, very_supportive_task(loaded), out, fmt)
