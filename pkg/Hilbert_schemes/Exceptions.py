class HilbertSchemeError(Exception):
    """Base error. `exit_code` is what the command line returns for it."""

    exit_code = 4
    code = "INTERNAL"

    def __init__(self, detail, **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context

    def to_dict(self):
        return {"code": self.code, "detail": self.detail, "context": {k: str(v) for k, v in self.context.items()}}


# ---------------------------
# Validation errors (exit 2)
# ---------------------------
class ProblemValidationError(HilbertSchemeError):
    exit_code = 2
    code = "VALIDATION"


class DimensionMismatch(ProblemValidationError):
    code = "DIMENSION_MISMATCH"


class ShapeMismatch(ProblemValidationError):
    code = "SHAPE_MISMATCH"


class InfiniteSet(ProblemValidationError):
    code = "INFINITE_SET"


class InfiniteDimension(ProblemValidationError):
    code = "INFINITE_DIMENSION"


class NoRepresentation(ProblemValidationError):
    code = "NO_REPRESENTATION"


# ---------------------------
# Resource caps (exit 3)
# ---------------------------
class ResourceCapError(HilbertSchemeError):
    exit_code = 3
    code = "RESOURCE_CAP"


class UnboundedFiber(ResourceCapError):
    code = "UNBOUNDED_FIBER"


class IterationCapExceeded(ResourceCapError):
    code = "ITERATION_CAP"


class CapExceeded(ResourceCapError):
    code = "CAP_EXCEEDED"


class SearchCapExceeded(ResourceCapError):
    code = "SEARCH_CAP"


# ---------------------------
# Internal assertions (exit 4)
# ---------------------------
class InternalAssertion(HilbertSchemeError):
    code = "INTERNAL_ASSERTION"


class UnmappableMinor(InternalAssertion):
    code = "UNMAPPABLE_MINOR"


class NonterminationGuard(InternalAssertion):
    code = "NONTERMINATION_GUARD"
