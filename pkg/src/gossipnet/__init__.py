"""Reputation-based cooperation on k-regular networks.

A repeated prisoner's dilemma in which agents remember who cheated them
and, on a network, listen to friends they still trust. The package
enumerates small regular graphs, measures their clustering, and estimates
how many plays per agent it takes for cooperators to out-earn cheaters.
"""

from .canon import GraphSetEntry, canonical_form, canonical_key, enumerate_k_regular_connected, is_canonical
from .errors import (
    CapacityError,
    DegenerateRegressionError,
    GenerationError,
    Graph6ParseError,
    InvalidParameterError,
)
from .experiment import (
    OlsFit,
    PayoffCurves,
    RunConfig,
    SweepRecord,
    ThresholdResult,
    ols_fit,
    run_curves,
    seed_schedule,
    sweep_clustering,
    sweep_m,
    sweep_ols,
    threshold_from_curves,
)
from .game import (
    DEFAULT_PAYOFFS,
    Action,
    AgentType,
    PayoffMatrix,
    SimulationState,
    gossip_action,
    gossip_expectation,
    new_state,
    play_pair,
    step_gossip,
    step_vanilla,
    type_average_payoffs,
    vanilla_action,
)
from .graph6 import decode as graph6_decode
from .graph6 import encode as graph6_encode
from .graphs import (
    Graph,
    average_clustering,
    circulant_graph,
    complete_graph,
    cycle_graph,
    is_connected,
    local_triangle_count,
    random_k_regular_connected,
    triangle_counts,
)
from .oracle import ExactCurves, exact_gossip_curves, exact_vanilla_curves

__version__ = "0.1.0"
