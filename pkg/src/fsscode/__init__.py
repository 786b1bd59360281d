"""Quasi-cyclic LDPC codes from finite set systems.

Pipeline: define or construct a set system, search for circulant shifts
achieving a target girth, expand to a parity-check matrix, and evaluate the
code by exact girth computation and AWGN simulation.
"""

from .setsystem import (
    BinaryMatrix,
    SetSystem,
    SetSystemError,
    SystemStats,
    block_stats,
    co_block,
    from_incidence,
    incidence_matrix,
    validate_fss,
)
from .qc import (
    QCProtoMatrix,
    ShiftSequence,
    assemble,
    circulant,
    exact_rate,
    expand,
    gf2_rank,
    normalize_shifts,
    rate_bound,
    read_alist,
    shift_sequence_from_list,
    shifts_from_json,
    shifts_to_json,
    write_alist,
)
from .girth import (
    GirthReport,
    WalkWitness,
    bsg_shortest_closed_walk,
    build_bsg,
    edge_girth,
    inevitable_girth,
    tanner_girth,
    verify_walk,
)
from .shiftsearch import SearchPolicy, SearchResult, search_shifts
from .construct import (
    ConstructionError,
    ConstructionResult,
    WeightProfile,
    method1,
    method1_lift,
    method2,
)
from .sim import (
    BerRecord,
    ChannelConfig,
    DecodeResult,
    StopRule,
    ber_sweep,
    spa_decode,
    transmit,
    write_ber_csv,
)

__version__ = "0.1.0"


def load_paper_tables():
    """Bundled reference systems, shift sequences and weight profiles."""
    import json
    from importlib import resources

    with resources.files(__package__).joinpath("data/paper_tables.json").open() as fh:
        return json.load(fh)
