"""The LRTP episode and run loops.

Each decision selects a plan with ASA* (or IASA* when the goal agenda is
enabled).  Without jumps only the first selected action is buffered; with
jumps the whole plan is buffered and the planning state jumps to its end.
One buffered action is executed per decision step.  While the buffer still
holds actions no search is run and the unused quantum is banked as credit,
which the next search spends in full.
"""

from __future__ import annotations

import json
import random
import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, TextIO

from .search import (BudgetKind, DeadEnd, DecisionBudget, HTable, SearchContext,
                     asa_select, iasa_select)
from .strips import GroundProblem, apply_action, apply_plan, subset

VARIANTS = {"base": (False, False), "I": (True, False), "J": (False, True), "IJ": (True, True)}


class FailureReason(str, Enum):
    ACTION_CAP = "ActionCapReached"
    DEAD_END = "DeadEnd"
    GLOBAL_TIMEOUT = "GlobalTimeout"


@dataclass(frozen=True)
class GlobalLimit:
    """Either a fixed number of episodes or a wall-clock allowance in ms."""

    episodes: Optional[int] = None
    millis: Optional[float] = None

    def __post_init__(self):
        if (self.episodes is None) == (self.millis is None):
            raise ValueError("give exactly one of episodes or millis")
        if (self.episodes or 0) < 0 or (self.millis or 0) < 0:
            raise ValueError("global limit must be non-negative")


@dataclass(frozen=True)
class RunConfig:
    improvement_I: bool = False
    improvement_J: bool = False
    budget: DecisionBudget = DecisionBudget()
    global_limit: GlobalLimit = GlobalLimit(episodes=10)
    max_actions_per_episode: int = 500
    learning: bool = False
    heuristic: str = "ff"
    seed: int = 0

    def __post_init__(self):
        if self.max_actions_per_episode < 1:
            raise ValueError("max_actions_per_episode must be >= 1")
        if self.heuristic not in ("ff", "zero"):
            raise ValueError(f"unknown heuristic {self.heuristic!r}")

    @classmethod
    def for_variant(cls, variant: str, **kw) -> "RunConfig":
        i, j = VARIANTS[variant]
        return cls(improvement_I=i, improvement_J=j, **kw)

    @property
    def variant(self) -> str:
        return {v: k for k, v in VARIANTS.items()}[(self.improvement_I, self.improvement_J)]


@dataclass
class EpisodeResult:
    success: bool
    executed_plan: list
    decisions: int
    expansions_total: int
    failure_reason: Optional[FailureReason] = None
    credit_earned: int = 0

    @property
    def plan_length(self) -> int:
        return len(self.executed_plan)


def lrtp_episode(
    prob: GroundProblem,
    cfg: RunConfig,
    rng: random.Random,
    *,
    htable: Optional[HTable] = None,
    ctx: Optional[SearchContext] = None,
    trace: Optional[TextIO] = None,
    deadline: Optional[float] = None,
    episode: int = 0,
) -> EpisodeResult:
    ctx = ctx or SearchContext(prob.actions, cfg.heuristic)
    acts = prob.actions
    goal = prob.goal
    s = s_r = prob.init
    buffer: deque[int] = deque()
    executed: list[int] = []
    decisions = expansions = credit = earned = 0
    select = iasa_select if cfg.improvement_I else asa_select

    def result(success, reason=None):
        return EpisodeResult(success, executed, decisions, expansions, reason, earned)

    while not subset(goal, s_r):
        if deadline is not None and time.perf_counter() >= deadline:
            return result(False, FailureReason.GLOBAL_TIMEOUT)
        if len(executed) >= cfg.max_actions_per_episode:
            return result(False, FailureReason.ACTION_CAP)
        if buffer:
            # the quantum of this decision step is banked, not searched
            credit += cfg.budget.amount
            earned += cfg.budget.amount
        else:
            assert s == s_r
            budget = cfg.budget.with_credit(credit if cfg.improvement_J else 0)
            credit = 0
            meter = budget.start()
            try:
                sel = select(acts, s, goal, budget, rng, meter=meter, htable=htable, ctx=ctx)
            except DeadEnd:
                sel = None
            decisions += 1
            expansions += meter.expansions
            if trace is not None:
                trace.write(json.dumps({
                    "episode": episode,
                    "decision": decisions,
                    "allowance": budget.allowance,
                    "spent": meter.expansions if budget.kind is BudgetKind.EXPANSIONS
                    else round(meter.elapsed_ms, 3),
                    "plan_len": None if sel is None else len(sel.plan),
                    "f": None if sel is None or sel.node is None else sel.node.f,
                    "g": None if sel is None or sel.node is None else sel.node.g,
                }) + "\n")
            if sel is None or not sel.plan:
                return result(False, FailureReason.DEAD_END)
            if cfg.improvement_J:
                buffer.extend(sel.plan)
                s = apply_plan(s, sel.plan, acts)
            else:
                buffer.append(sel.plan[0])
                s = apply_action(s, acts[sel.plan[0]])
        a = buffer.popleft()
        s_r = apply_action(s_r, acts[a])
        executed.append(a)
    return result(True)


def lrtp_run(prob: GroundProblem, cfg: RunConfig, *, trace: Optional[TextIO] = None) -> list[EpisodeResult]:
    """Repeat episodes from the initial state until the global limit. One rng
    stream runs across all episodes; the learned table too, when enabled."""
    rng = random.Random(cfg.seed)
    ctx = SearchContext(prob.actions, cfg.heuristic)
    htable = HTable() if cfg.learning else None
    results: list[EpisodeResult] = []
    lim = cfg.global_limit
    deadline = None
    if lim.millis is not None:
        deadline = time.perf_counter() + lim.millis / 1000.0
    while True:
        if lim.episodes is not None and len(results) >= lim.episodes:
            break
        if deadline is not None and time.perf_counter() >= deadline:
            break
        res = lrtp_episode(prob, cfg, rng, htable=htable, ctx=ctx, trace=trace,
                           deadline=deadline, episode=len(results))
        results.append(res)
    return results
