"""Perfect dominating sets and total perfect codes in grid graphs."""

from .core import (
    GridDims,
    GridError,
    InitialClass,
    InitialCondition,
    PdsSolution,
    Vertex,
    classify_initial,
    components,
    components_are_rectangles,
    init_word,
    is_admissible,
    is_pds,
    is_tpc,
    oracle_enumerate,
)
from .theta import (
    AllAlpha,
    AllBeta,
    Callback,
    Decision,
    DecisionContext,
    Explicit,
    Gamma,
    LabelRow,
    Pds,
    Running,
    Stalled,
    advance_level,
    init_labels,
    label_table,
    parse_strategy,
    run_theta,
    tau,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
