"""Local-search maximum k-plex solver."""

from .bandit import BanditState
from .forbid import DtccTracker, OpenTracker, SccTracker, make_tracker
from .graph import (
    Graph,
    GraphInputError,
    load_graph,
    parse_dimacs,
    parse_edgelist,
    peel,
    to_dimacs,
)
from .hyper import HyperState, cool, observe, select_heuristic, selection_probabilities, solve_bdcch
from .oracle import OracleResult, exact_max_kplex
from .search import (
    SearchConfig,
    SearchResult,
    SolveReport,
    construct_init,
    search,
    solve_bdcc,
)
from .solution import Action, CandidateSolution, Move, MoveSets, apply_action, classify, is_kplex

__all__ = [
    "Action",
    "BanditState",
    "CandidateSolution",
    "DtccTracker",
    "Graph",
    "GraphInputError",
    "HyperState",
    "Move",
    "MoveSets",
    "OpenTracker",
    "OracleResult",
    "SccTracker",
    "SearchConfig",
    "SearchResult",
    "SolveReport",
    "apply_action",
    "classify",
    "construct_init",
    "cool",
    "exact_max_kplex",
    "is_kplex",
    "load_graph",
    "make_tracker",
    "observe",
    "parse_dimacs",
    "parse_edgelist",
    "peel",
    "search",
    "select_heuristic",
    "selection_probabilities",
    "solve_bdcc",
    "solve_bdcch",
    "to_dimacs",
]

__version__ = "0.1.0"
