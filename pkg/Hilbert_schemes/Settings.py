import os
import sys

from pydantic import BaseModel, ConfigDict, Field

VERSION = "0.3.0"
TOOL_NAME = "hilbert-schemes"


class Caps(BaseModel):
    """Search budgets. Every artifact echoes the effective values."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    cap_degrees: int = Field(64, ge=1, description="degrees in the witness frontier")
    cap_iter: int = Field(16, ge=1, description="rounds of the supportive iteration")
    graver_cap: int = Field(5000, ge=1, description="elements kept during Graver completion")
    max_monomials: int = Field(200000, ge=1, description="monomials visited per fiber or standard set")
    max_weight: int = Field(512, ge=1, description="largest certified weight a fiber search accepts")
    max_minors: int = Field(200000, ge=1, description="minors a determinantal emitter may expand")
    max_branches: int = Field(2000000, ge=1, description="tree-search nodes in ideal enumeration")


DEFAULT_CAPS = Caps()


# ---------------------------
# Shipped data location
# ---------------------------
if getattr(sys, 'frozen', False):
    base_path = sys._MEIPASS
else:
    base_path = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

corpus_path = os.path.normpath(os.path.join(base_path, "corpusRunner", "problems"))
