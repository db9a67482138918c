from .oracle import OracleCapExceeded, OracleResult, oracle_crossing_number
from .search import (
    SolverError,
    anchored_crossing_number,
    crossing_number,
    decide_cr,
    solve,
    tile_crossing_number,
)
from .spec import (
    CrossingSpec,
    Planarization,
    SolveResult,
    SpecError,
    TimeLimitExceeded,
    apply_planarization,
    verify_witness,
)

__all__ = [
    "CrossingSpec",
    "OracleCapExceeded",
    "OracleResult",
    "Planarization",
    "SolveResult",
    "SolverError",
    "SpecError",
    "TimeLimitExceeded",
    "anchored_crossing_number",
    "apply_planarization",
    "crossing_number",
    "decide_cr",
    "oracle_crossing_number",
    "solve",
    "tile_crossing_number",
    "verify_witness",
]
