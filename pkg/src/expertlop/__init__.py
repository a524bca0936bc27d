"""Pairwise expert opinions, ranking mixtures and the linear ordering polytope.

All arithmetic is exact (``fractions.Fraction``). Set ``EXPERTLOP_DISABLE_NUMBA=1``
before import to run the numeric kernels in plain numpy.
"""

from ._accel import BACKEND
from .decomposition import (
    MAX_LABELS,
    PrefixDecomposition,
    RankingDistribution,
    complement_product_weight,
    decompose_graph,
    decompose_state,
    prefix_split,
    prefix_step,
    synthesize_log,
)
from .documents import Document, load_document, parse_document, render_document
from .errors import (
    DegenerateStratumError,
    DocumentError,
    ExpertLOPError,
    IdenticalLabelsError,
    IncompleteGraphError,
    InputError,
    InvalidEpsilonError,
    InvalidTableError,
    MissingEdgeError,
    SizeLimitError,
    SolverError,
    UnknownLabelError,
    UnknownStateError,
    ZeroPropensityError,
)
from .graph import (
    Cycle,
    CurlResult,
    ExpertGraph,
    LabelSet,
    LinearOrderingGraph,
    PairwiseGraph,
    RankingGraph,
    curl_check,
    edge_weight,
    find_preference_cycle,
    majority_cycle,
    ranking_edge,
)
from .polytope import PolytopeQuery, PolytopeVerdict, bound_missing_edge, curl_scan, membership
from .scenarios import (
    CountTable,
    DomainRestriction,
    PanelReport,
    ate,
    backdoor_do,
    faithfulness_check,
    greek_table,
    ipw_ate,
    reweighted_prevalence,
    run_panel,
)
from .tables import (
    ProbabilityTable,
    approximate_ranking,
    expert_graph,
    situational_graph,
    situational_opinion,
    squared_distance,
)

__version__ = "0.1.0"
