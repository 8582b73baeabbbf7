"""Yupana counting-board arithmetic.

Numbers live on an m-row, four-column board whose columns weigh 5, 3, 2, 1;
value-neutral pattern movements rewrite token layouts, and the four
arithmetic operations are driven entirely by loading operands and firing
those movements.
"""

from .arithmetic import (
    DivisionValue,
    OperationResult,
    abbreviated_replicate,
    displace_divisor,
    miray,
    rakiy,
    taqay,
    yapay,
)
from .board import (
    NEGATIVE,
    POSITIVE,
    WEIGHTS,
    BoardConfig,
    BoardState,
    DigitPattern,
    SquareAddr,
    SquareContent,
    board_value,
    board_value_by_tokens,
    capacity,
    color_value,
    decode_simple,
    encode_digit,
    encode_number,
    is_simple,
    parse_snapshot,
    snapshot,
)
from .engine import (
    CANONICAL,
    CANONICAL_PRIORITY,
    ExploreReport,
    Match,
    MoveTrace,
    Strategy,
    TraceStep,
    conflicts,
    explore,
    next_canonical_move,
    pair_and_cancel,
    parallel_step,
    random_strategy,
    simplify,
)
from .errors import (
    ConflictError,
    CycleError,
    DomainError,
    NoMatchError,
    NotSimpleError,
    OverflowError,
    StaleMatchError,
    YupanaError,
)
from .rules import (
    Rule,
    all_matches,
    apply_match,
    catalog,
    catalog_document,
    match_rule,
    rule_by_id,
    rule_delta,
)

__version__ = "0.1.0"
