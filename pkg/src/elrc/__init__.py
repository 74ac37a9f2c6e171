"""Binary locally repairable codes built as the m-fold product of [r+1, r]
single-parity-check codes, with sequential and parallel erasure repair."""

from .code import (
    CodeParams,
    Coord,
    ParityCheckMatrix,
    all_coords,
    build_parity_check,
    coord_rank,
    coord_unrank,
    encode,
    extract_info,
    format_coord,
    is_codeword,
    l_set,
    line_coords,
    parse_coord,
    t_set,
)
from .errors import (
    BudgetExceededError,
    DimensionError,
    ELRCError,
    FormatError,
    InconsistentWordError,
    InvalidCoordinateError,
    InvalidParametersError,
    NotParityCoordinateError,
    PlanOrderError,
)
from .repair import (
    ERASED,
    ParallelCheck,
    RepairPlan,
    RepairStep,
    Stuck,
    execute_plan,
    mask_word,
    parallel_repairable,
    plan_sequential,
    repair_sets,
    validate_plan,
)
from .analysis import (
    BoundsRow,
    VerificationReport,
    bounds_row,
    general_repair_set_oracle,
    min_distance_bruteforce,
    parallel_tolerance,
    table1,
    table2,
    verify_elrc,
)

__version__ = "0.1.0"
