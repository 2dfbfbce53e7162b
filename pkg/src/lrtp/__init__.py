"""Real-time STRIPS planning: LRTP with goal-agenda selection and jumps."""

from pathlib import Path

from .agenda import GoalAgenda, OrderingRelation, compute_orderings, relaxed_plan_ordering
from .grounding import ground, load_problem
from .heuristics import INF, build_rpg, extract_relaxed_plan, h_ff
from .pddl import (GroundingError, PDDLError, PDDLSyntaxError, UnsupportedFeature,
                   parse_domain, parse_problem)
from .realtime import (EpisodeResult, FailureReason, GlobalLimit, RunConfig,
                       lrtp_episode, lrtp_run)
from .search import (BudgetKind, DeadEnd, DecisionBudget, EmptyFrontier, asa_star,
                     bounded_astar, iasa_star, select_frontier_state)
from .strips import (Action, GroundProblem, applicable_actions, apply_action, apply_plan,
                     is_solution)

DATA_DIR = Path(__file__).parent / "data"

__version__ = "0.1.0"

__all__ = [
    "Action", "BudgetKind", "DATA_DIR", "DeadEnd", "DecisionBudget", "EmptyFrontier", "EpisodeResult",
    "FailureReason", "GlobalLimit", "GoalAgenda", "GroundProblem", "GroundingError", "INF",
    "OrderingRelation", "PDDLError", "PDDLSyntaxError", "RunConfig", "UnsupportedFeature",
    "applicable_actions", "apply_action", "apply_plan", "asa_star", "bounded_astar", "build_rpg",
    "compute_orderings", "extract_relaxed_plan", "ground", "h_ff", "iasa_star", "is_solution",
    "load_problem", "lrtp_episode", "lrtp_run", "parse_domain", "parse_problem",
    "relaxed_plan_ordering", "select_frontier_state",
]
