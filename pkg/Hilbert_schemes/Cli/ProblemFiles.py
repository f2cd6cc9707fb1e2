import hashlib
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec, TailKind
from Hilbert_schemes.GradingCore.Gradings import FiberBox, Grading
from Hilbert_schemes.Grothendieck.Gotzmann import HilbertPolynomial, hilbert_function_from_polynomial
from Hilbert_schemes.Settings import DEFAULT_CAPS, Caps

logger = logging.getLogger(__name__)


# ---------------------------
# Pydantic Models
# ---------------------------
class GradingBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    columns: List[List[int]]
    free_rank: int = Field(1, ge=0)
    moduli: List[int] = []

    def build(self) -> Grading:
        return Grading.from_columns(self.columns, self.free_rank, self.moduli)


class TableEntry(BaseModel):
    degree: List[int]
    value: int = Field(ge=0)


class HilbertBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    table: List[TableEntry] = []
    tail: TailKind = TailKind.ZERO_OUTSIDE
    constant: int = Field(0, ge=0)
    coefficients: List[str] = []
    threshold: int = 0
    polynomial: Optional[str] = None

    def build(self, grading: Grading) -> HilbertSpec:
        if self.polynomial is not None:
            g = HilbertPolynomial.parse(self.polynomial, grading.n)
            overrides = {entry.degree[0]: entry.value for entry in self.table}
            h = hilbert_function_from_polynomial(g, overrides)
        else:
            values = {tuple(entry.degree): entry.value for entry in self.table}
            try:
                coefficients = tuple(Fraction(c) for c in self.coefficients)
            except ValueError:
                raise ProblemValidationError("polynomial coefficients must be rationals")
            h = HilbertSpec.from_mapping(values, tail=self.tail, constant=self.constant,
                                         coefficients=coefficients, threshold=self.threshold)
        h.check(grading)
        return h


class ChartBasisEntry(BaseModel):
    degree: List[int]
    monomials: List[List[int]]


class TaskBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: str
    D: Optional[List[List[int]]] = None
    e: Optional[List[int]] = None
    seed: Optional[List[List[int]]] = None
    box: Optional[str] = None
    exact_syzygies: bool = True
    emitter: Optional[str] = None
    chart_basis: Optional[List[ChartBasisEntry]] = None
    ideal: Optional[List[List[int]]] = None
    action: Optional[str] = None
    degrees: Optional[List[List[int]]] = None
    polynomial: Optional[str] = None
    n: Optional[int] = None
    points: Optional[int] = None
    flavor: Optional[str] = None
    model: Optional[str] = None
    m: Optional[int] = None
    order: str = "lex"
    generators: Optional[List[List[Dict[str, Any]]]] = None
    pairs: Optional[List[List[int]]] = None
    caps: Dict[str, int] = {}


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = ""
    description: str = ""
    grading: Optional[GradingBlock] = None
    hilbert: Optional[HilbertBlock] = None
    task: TaskBlock
    expect: Dict[str, Any] = {}


class LoadedProblem(NamedTuple):
    problem: ProblemFile
    digest: str
    caps: Caps
    grading: Optional[Grading]
    h: Optional[HilbertSpec]
    box: Optional[FiberBox]

    @property
    def task(self) -> TaskBlock:
        return self.problem.task

    def require_grading(self) -> Grading:
        if self.grading is None:
            raise ProblemValidationError("this task needs a grading block")
        return self.grading

    def require_h(self) -> HilbertSpec:
        if self.h is None:
            raise ProblemValidationError("this task needs a hilbert block")
        return self.h


# ---------------------------
# Loading
# ---------------------------
def read_problem(path: str) -> tuple:
    try:
        with open(path, 'rb') as f:
            raw = f.read()
    except OSError as e:
        raise ProblemValidationError(f"cannot read problem file: {e}", path=path)
    try:
        data = json.loads(raw.decode('utf-8'))
        problem = ProblemFile.model_validate(data)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ProblemValidationError(f"problem file is not valid JSON: {e}", path=path)
    except ValidationError as e:
        raise ProblemValidationError(f"problem file does not match the schema: {e.errors()[0]['msg']}",
                                     path=path, location=e.errors()[0]['loc'])
    return problem, hashlib.sha256(raw).hexdigest()


def effective_caps(problem_caps: Dict[str, int], overrides: Dict[str, Optional[int]]) -> Caps:
    values = dict(DEFAULT_CAPS.model_dump())
    values.update(problem_caps)
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return Caps(**values)
    except ValidationError as e:
        raise ProblemValidationError(f"invalid caps: {e.errors()[0]['msg']}")


def load_problem(problem: ProblemFile, digest: str, box: Optional[str] = None, cap_degrees: Optional[int] = None,
                 cap_iter: Optional[int] = None, exact_syzygies: Optional[bool] = None) -> LoadedProblem:
    """Apply command-line overrides and build the domain objects."""
    updates = {}
    if box is not None:
        updates["box"] = box
    if exact_syzygies is not None:
        updates["exact_syzygies"] = exact_syzygies
    if updates:
        problem = problem.model_copy(update={"task": problem.task.model_copy(update=updates)})
    caps = effective_caps(problem.task.caps, {"cap_degrees": cap_degrees, "cap_iter": cap_iter})
    grading = problem.grading.build() if problem.grading is not None else None
    h = problem.hilbert.build(grading) if problem.hilbert is not None and grading is not None else None
    fiber_box = FiberBox.parse(problem.task.box, grading.n) if problem.task.box and grading is not None else None
    logger.info("loaded problem '%s' (%s), command %s", problem.name, digest[:12], problem.task.command)
    return LoadedProblem(problem, digest, caps, grading, h, fiber_box)


def open_problem(path: str, **overrides) -> LoadedProblem:
    problem, digest = read_problem(path)
    return load_problem(problem, digest, **overrides)


def adhoc_problem(task: Dict[str, Any], **overrides) -> LoadedProblem:
    """Problems given entirely by flags, hashed from their canonical JSON."""
    problem = ProblemFile(task=TaskBlock(**task))
    raw = json.dumps(problem.model_dump(mode="json"), sort_keys=True).encode('utf-8')
    return load_problem(problem, hashlib.sha256(raw).hexdigest(), **overrides)


# ---------------------------
# Shared command-line options
# ---------------------------
def problem_options(f):
    options = [
        click.option("--box", default=None, help="Per-variable exponent bounds, e.g. 0:3,1:3."),
        click.option("--cap-degrees", type=int, default=None, help="Degrees in the witness frontier."),
        click.option("--cap-iter", type=int, default=None, help="Rounds of the supportive iteration."),
        click.option("--exact-syzygies/--sufficient-syzygies", default=None,
                     help="Check (s) on minimal syzygy degrees or on all pairwise lcms."),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                     help="Write the JSON artifact here instead of stdout."),
        click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def overrides_from(options: Dict[str, Any]) -> Dict[str, Any]:
    return {key: options.get(key) for key in ("box", "cap_degrees", "cap_iter", "exact_syzygies")}
