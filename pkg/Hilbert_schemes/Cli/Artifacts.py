import json
import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

import click
import numpy as np
import pandas as pd
from pydantic import BaseModel

from Hilbert_schemes.Cli.ProblemFiles import LoadedProblem
from Hilbert_schemes.Settings import TOOL_NAME, VERSION

logger = logging.getLogger(__name__)

# integers beyond this are written as decimal strings
SAFE_INTEGER = 2 ** 53


def to_jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump(mode="json"))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        value = int(value)
        return str(value) if abs(value) >= SAFE_INTEGER else value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return "inf" if value == float("inf") else value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=json.dumps) if isinstance(value, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def build_artifact(command: str, loaded: LoadedProblem, result: Dict[str, Any]) -> Dict[str, Any]:
    """Everything needed to reproduce a run; no timestamps, so reruns are byte-identical."""
    return {
        "tool": TOOL_NAME,
        "version": VERSION,
        "command": command,
        "problem": loaded.problem.name,
        "problem_sha256": loaded.digest,
        "caps": loaded.caps.model_dump(),
        "box": loaded.box.to_dict() if loaded.box is not None else None,
        "result": result,
    }


def render_text(artifact: Dict[str, Any]) -> str:
    result = artifact["result"]
    rows = result.get("summary")
    if not rows:
        rows = [{k: v for k, v in result.items() if not isinstance(v, (list, dict))}]
    frame = pd.DataFrame(rows)
    header = f"{artifact['tool']} {artifact['version']} {artifact['command']} ({artifact['problem_sha256'][:12]})"
    return header + "\n" + frame.to_string(index=False) + "\n"


def emit(command: str, loaded: LoadedProblem, result: Dict[str, Any], out: Optional[str] = None,
         fmt: str = "json") -> Dict[str, Any]:
    """The JSON artifact goes to `out` when given; stdout gets the requested format."""
    artifact = build_artifact(command, loaded, result)
    if out:
        with open(out, 'w', encoding='utf-8', newline="\n") as f:
            f.write(canonical_json(artifact))
        logger.info("wrote %s artifact to %s", command, out)
    click.echo(canonical_json(artifact) if fmt == "json" and not out else render_text(artifact), nl=False)
    return artifact
