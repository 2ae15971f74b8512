"""Alternating sign hypermatrices, Latin-like squares, and T-block calculus."""

from .core import (
    AshmlabError,
    Line,
    ParseError,
    SignMatrix,
    SignTensor,
    ValidationReport,
    extract_line,
    is_alternating_unit_line,
    is_alternating_unit_line_by_prefix_sums,
    loads_ashm_json,
    loads_ashm_txt,
    dumps_ashm_json,
    dumps_ashm_txt,
    validate_ashm,
    validate_asm,
)
from .latinlike import (
    NotLatinError,
    PermutationSequence,
    ashl_of,
    decompose_latin,
    entry_histogram,
    is_latin_square,
    max_multiplicity,
    random_latin_square,
)
from .tblocks import (
    Certificate,
    DecompositionError,
    NotSameOrderError,
    PreconditionFailedError,
    RangeOverflowError,
    TBlock,
    apply_tblocks,
    decompose_difference,
    decompose_paired,
    depth,
    depth_ledger,
    materialize,
    parse_tblock,
    same_ashl_certificate,
    signed_depth_ledger,
    sum_tblocks,
)
from .construct import ConstructionParams, diamond_asm, fixture, fixture_names, max_entry_ashm
from .enumerate import (
    CapExceededError,
    CollisionGroup,
    corner_trade_template,
    enumerate_ashms,
    enumerate_asms,
    find_ashl_collisions,
    perturbation_search,
)

__version__ = "0.1.0"
