"""Extremal Betti numbers and persistent homology of flag complexes."""

from .extremal import (
    AlternationDepth,
    DomainError,
    MovePath,
    Representation,
    alternation_depth,
    delta_alternation,
    delta_start,
    h_betti_closed_form,
    h_filtration,
    left_ahead_normalize,
    max_bar_witness,
    optimal_representations,
    parse_representation,
    post_turan_total_persistence,
    representation_to_filtration,
)
from .graph import (
    CapacityError,
    FormatError,
    Graph,
    PreconditionError,
    VertexPartition,
    complement,
    join,
    turan,
)
from .homology import FieldSpec, betti, betti_independence, turan_betti_closed_form
from .persistence import (
    Barcode,
    EdgewiseFiltration,
    MetricRealization,
    betti_curve,
    flag_persistence,
    metric_realization,
    representative_cycles,
    total_persistence,
    triangle_free_support,
    vietoris_rips_filtration,
)
from .report import VerificationReport

__version__ = "0.1.0"
