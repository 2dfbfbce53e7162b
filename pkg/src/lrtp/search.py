"""Budget-bounded A* and the two action-selection procedures built on it.

``asa_star`` runs A* from the current state until the decision budget runs
out, then commits to the open node with the lowest f, breaking ties by the
lowest g and then uniformly at random.  ``iasa_star`` does the same for the
cumulative subgoals of a goal agenda, sharing one budget between them.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Optional, Sequence

from .agenda import relaxed_plan_ordering
from .heuristics import INF, FFHeuristic, h_zero
from .strips import Action, State, SuccessorGenerator, apply_plan, subset

Heuristic = Callable[[State, State], float]


class DeadEnd(Exception):
    """No action sequence can be selected from the current state."""


class EmptyFrontier(DeadEnd):
    pass


class BudgetKind(str, Enum):
    EXPANSIONS = "expansions"
    MILLIS = "millis"


@dataclass(frozen=True)
class DecisionBudget:
    kind: BudgetKind = BudgetKind.EXPANSIONS
    amount: int = 100
    credit: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", BudgetKind(self.kind))
        if self.amount < 1:
            raise ValueError("budget amount must be >= 1")
        if self.credit < 0:
            raise ValueError("budget credit must be >= 0")

    @property
    def allowance(self) -> int:
        return self.amount + self.credit

    def with_credit(self, credit: int) -> "DecisionBudget":
        return replace(self, credit=credit)

    def start(self) -> "BudgetMeter":
        return BudgetMeter(self)

    @classmethod
    def parse(cls, text: str) -> "DecisionBudget":
        """``"exp:200"`` or ``"ms:500"``."""
        kind, _, amount = text.strip().partition(":")
        kinds = {"exp": BudgetKind.EXPANSIONS, "expansions": BudgetKind.EXPANSIONS,
                 "ms": BudgetKind.MILLIS, "millis": BudgetKind.MILLIS}
        if kind.lower() not in kinds or not amount:
            raise ValueError(f"bad budget {text!r}; expected exp:N or ms:N")
        return cls(kinds[kind.lower()], int(amount))

    def __str__(self):
        return f"{'exp' if self.kind is BudgetKind.EXPANSIONS else 'ms'}:{self.amount}"


class BudgetMeter:
    """Tracks what one decision has spent. Wall-clock budgets may overrun by
    at most the expansion in progress when time runs out."""

    def __init__(self, budget: DecisionBudget):
        self.budget = budget
        self.expansions = 0
        self._t0 = time.perf_counter()

    def spend(self) -> None:
        self.expansions += 1

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self._t0) * 1000.0

    def exhausted(self) -> bool:
        if self.budget.kind is BudgetKind.EXPANSIONS:
            return self.expansions >= self.budget.allowance
        return self.elapsed_ms >= self.budget.allowance


@dataclass(eq=False)
class SearchNode:
    state: State
    g: int
    h: float
    parent: Optional["SearchNode"] = None
    via_action: Optional[int] = None

    @property
    def f(self) -> float:
        return self.g + self.h

    def path(self) -> list[int]:
        out = []
        n = self
        while n.parent is not None:
            out.append(n.via_action)
            n = n.parent
        out.reverse()
        return out


@dataclass
class Frontier:
    open: list
    closed: dict
    expanded: list = field(default_factory=list)
    expansions: int = 0
    goal_node: Optional[SearchNode] = None
    root: Optional[SearchNode] = None


class HTable:
    """Learned heuristic values; entries only ever increase.

    Keyed by (goal, state) because agenda-driven selection searches towards
    several cumulative subgoals; with a fixed goal this is a per-state table.
    """

    def __init__(self):
        self.values: dict[tuple[State, State], float] = {}

    def __len__(self):
        return len(self.values)

    def get(self, s: State, goal: State, default: float) -> float:
        v = self.values.get((goal, s))
        return default if v is None or v < default else v

    def raise_to(self, s: State, goal: State, value: float) -> None:
        if value > self.values.get((goal, s), -INF):
            self.values[(goal, s)] = value

    def wrap(self, h: Heuristic) -> Heuristic:
        def learned(s, goal):
            return self.get(s, goal, h(s, goal))
        return learned


class SearchContext:
    """Per-action-set machinery shared across calls: successor index and heuristic."""

    def __init__(self, actions: Sequence[Action], heuristic: str | Heuristic = "ff"):
        self.actions = actions
        self.successors = SuccessorGenerator(actions)
        if heuristic == "ff":
            self.heuristic: Heuristic = FFHeuristic(actions)
        elif heuristic == "zero":
            self.heuristic = h_zero
        elif callable(heuristic):
            self.heuristic = heuristic
        else:
            raise ValueError(f"unknown heuristic {heuristic!r}")


def _context(actions, heuristic, ctx):
    if ctx is not None:
        return ctx
    return SearchContext(actions, heuristic)


def bounded_astar(
    actions: Sequence[Action],
    s: State,
    goal: State,
    budget: DecisionBudget,
    *,
    heuristic: str | Heuristic = "ff",
    meter: Optional[BudgetMeter] = None,
    htable: Optional[HTable] = None,
    ctx: Optional[SearchContext] = None,
) -> Frontier:
    """A* from ``s`` until the budget runs out, a goal node is popped, or the
    open list empties. A popped goal node is left in the open list."""
    ctx = _context(actions, heuristic, ctx)
    meter = meter or budget.start()
    h = ctx.heuristic if htable is None else htable.wrap(ctx.heuristic)
    hcache: dict[State, float] = {}

    def hval(t):
        v = hcache.get(t)
        if v is None:
            v = hcache[t] = h(t, goal)
        return v

    root = SearchNode(s, 0, hval(s))
    frontier = Frontier(open=[], closed={}, root=root)
    if root.h == INF:
        return frontier
    tie = itertools.count()
    heap = [(root.f, root.g, next(tie), root)]
    in_open = {s: root}
    best_g = {s: 0}
    acts = ctx.actions
    while heap:
        if meter.exhausted():
            break
        _, _, _, node = heapq.heappop(heap)
        if in_open.get(node.state) is not node:
            continue
        if subset(goal, node.state):
            frontier.goal_node = node
            break
        del in_open[node.state]
        meter.spend()
        frontier.expansions += 1
        frontier.closed[node.state] = node.g
        frontier.expanded.append(node)
        g2 = node.g + 1
        for aid in ctx.successors(node.state):
            a = acts[aid]
            t = (node.state & ~a.del_mask) | a.add_mask
            if best_g.get(t, INF) <= g2:
                continue
            ht = hval(t)
            if ht == INF:
                continue
            best_g[t] = g2
            child = SearchNode(t, g2, ht, node, aid)
            in_open[t] = child
            heapq.heappush(heap, (child.f, g2, next(tie), child))
    frontier.open = list(in_open.values())
    return frontier


def select_frontier_state(frontier: Frontier, rng) -> SearchNode:
    """Lowest f, then lowest g, then a uniform random pick. A goal node left
    in the open list by the early exit wins a remaining tie."""
    if not frontier.open:
        raise EmptyFrontier("open list is empty")
    fmin = min(n.f for n in frontier.open)
    s_f = [n for n in frontier.open if n.f == fmin]
    gmin = min(n.g for n in s_f)
    s_g = sorted((n for n in s_f if n.g == gmin), key=lambda n: n.state)
    if len(s_g) == 1:
        return s_g[0]
    goal = frontier.goal_node
    if goal is not None and any(n is goal for n in s_g):
        return goal
    return s_g[rng.randrange(len(s_g))]


def learn_update(table: HTable, expanded: Sequence[SearchNode], frontier: Frontier, goal: State) -> HTable:
    """Raise h of every expanded state to the best cost-to-frontier-plus-h
    over the open nodes below it in the search tree."""
    expanded_ids = {id(n) for n in expanded}
    best: dict[int, tuple[SearchNode, float]] = {}
    for v in frontier.open:
        u = v.parent
        while u is not None:
            if id(u) in expanded_ids:
                value = (v.g - u.g) + v.h
                cur = best.get(id(u))
                if cur is None or value < cur[1]:
                    best[id(u)] = (u, value)
            u = u.parent
    for u, value in best.values():
        table.raise_to(u.state, goal, max(u.h, value))
    return table


@dataclass
class Selection:
    plan: list
    node: Optional[SearchNode]
    expansions: int
    subgoals_done: int = 0


def asa_select(actions, s, goal, budget, rng, *, heuristic="ff", meter=None, htable=None, ctx=None) -> Selection:
    ctx = _context(actions, heuristic, ctx)
    meter = meter or budget.start()
    before = meter.expansions
    frontier = bounded_astar(ctx.actions, s, goal, budget, meter=meter, htable=htable, ctx=ctx)
    if htable is not None and frontier.expanded:
        learn_update(htable, frontier.expanded, frontier, goal)
    try:
        node = select_frontier_state(frontier, rng)
    except EmptyFrontier as exc:
        raise DeadEnd(str(exc)) from None
    return Selection(node.path(), node, meter.expansions - before)


def asa_star(actions, s, goal, budget, rng, *, heuristic="ff", meter=None, htable=None, ctx=None) -> list[int]:
    return asa_select(actions, s, goal, budget, rng, heuristic=heuristic,
                      meter=meter, htable=htable, ctx=ctx).plan


def iasa_select(actions, s0, goal, budget, rng, *, heuristic="ff", meter=None, htable=None, ctx=None) -> Selection:
    ctx = _context(actions, heuristic, ctx)
    meter = meter or budget.start()
    agenda = relaxed_plan_ordering(ctx.actions, s0, goal)
    plan: list[int] = []
    s_i = s0
    node = None
    done = 0
    for i, sub in enumerate(agenda.cumulative()):
        if meter.exhausted():
            break
        try:
            sel = asa_select(ctx.actions, s_i, sub, budget, rng, meter=meter, htable=htable, ctx=ctx)
        except DeadEnd:
            if i == 0:
                raise
            break
        plan.extend(sel.plan)
        s_i = apply_plan(s_i, sel.plan, ctx.actions)
        node = sel.node
        done = i + 1
    return Selection(plan, node, meter.expansions, done)


def iasa_star(actions, s0, goal, budget, rng, *, heuristic="ff", meter=None, htable=None, ctx=None) -> list[int]:
    return iasa_select(actions, s0, goal, budget, rng, heuristic=heuristic,
                       meter=meter, htable=htable, ctx=ctx).plan
