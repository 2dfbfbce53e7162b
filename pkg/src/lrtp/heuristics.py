"""Relaxed planning graph, FF relaxed-plan heuristic and an exact h+ oracle."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .strips import Action, State, state_ids, subset

INF = math.inf


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class RelaxedPlanningGraph:
    prop_level: dict
    act_level: dict
    max_level: int
    best_supporter: dict
    actions: Sequence[Action]


@dataclass(frozen=True)
class RelaxedPlan:
    layers: tuple
    total_size: int

    @property
    def actions(self) -> list[int]:
        """Actions in layer order, each layer ascending by id."""
        return [a for layer in self.layers for a in sorted(layer)]


class _RPGBuilder:
    def __init__(self, actions: Sequence[Action]):
        self.actions = actions
        self.npre = [len(a.pre) for a in actions]
        self.by_pre: dict[int, list[int]] = {}
        self.free = []
        for a in actions:
            if not a.pre:
                self.free.append(a.id)
            for p in a.pre:
                self.by_pre.setdefault(p, []).append(a.id)

    def build(self, s: State, goal: Optional[State] = None) -> RelaxedPlanningGraph:
        """Grow layers ignoring deletes. With ``goal`` given, stop at the
        first layer containing every goal atom; the levels and supporters
        of everything up to that layer are identical to the fixpoint graph."""
        actions = self.actions
        remaining = list(self.npre)
        prop_level = {}
        act_level = {}
        best = {}
        new_props = state_ids(s)
        for p in new_props:
            prop_level[p] = 0
        ready = list(self.free)
        missing = None
        if goal is not None:
            missing = sum(1 for p in state_ids(goal) if p not in prop_level)
        level = 0
        while True:
            for p in new_props:
                for aid in self.by_pre.get(p, ()):
                    remaining[aid] -= 1
                    if remaining[aid] == 0:
                        ready.append(aid)
            if missing == 0 or not ready:
                break
            ready.sort()
            next_props = []
            for aid in ready:
                act_level[aid] = level
                for q in actions[aid].add:
                    if q not in prop_level:
                        prop_level[q] = level + 1
                        best[q] = aid
                        next_props.append(q)
                        if missing is not None and (goal >> q) & 1:
                            missing -= 1
            ready = []
            if not next_props:
                break
            level += 1
            new_props = next_props
        max_level = max(prop_level.values(), default=0)
        return RelaxedPlanningGraph(prop_level, act_level, max_level, best, actions)


def build_rpg(actions: Sequence[Action], s: State) -> RelaxedPlanningGraph:
    return _RPGBuilder(actions).build(s)


def extract_relaxed_plan(rpg: RelaxedPlanningGraph, goal: State) -> Optional[RelaxedPlan]:
    """Backward FF extraction. Returns None when some goal atom has no level.

    Each open subgoal at level i is supported by its best supporter (layer
    i-1) unless an action already chosen in layer i-1 adds it.
    """
    level = rpg.prop_level
    goals = state_ids(goal)
    if any(p not in level for p in goals):
        return None
    top = max((level[p] for p in goals), default=0)
    if top == 0:
        return RelaxedPlan((), 0)
    open_at = [set() for _ in range(top + 1)]
    for p in goals:
        open_at[level[p]].add(p)
    true_at = [set() for _ in range(top + 1)]
    layers = [set() for _ in range(top)]
    actions = rpg.actions
    for i in range(top, 0, -1):
        for p in sorted(open_at[i]):
            if p in true_at[i]:
                continue
            aid = rpg.best_supporter[p]
            layers[i - 1].add(aid)
            a = actions[aid]
            for q in a.pre:
                lq = level[q]
                if lq > 0:
                    open_at[lq].add(q)
            true_at[i].update(a.add)
    frozen = tuple(frozenset(layer) for layer in layers)
    return RelaxedPlan(frozen, sum(len(layer) for layer in frozen))


class FFHeuristic:
    """h_FF bound to one action set; the precondition index is built once."""

    def __init__(self, actions: Sequence[Action]):
        self._builder = _RPGBuilder(actions)

    def __call__(self, s: State, goal: State):
        if subset(goal, s):
            return 0
        rpg = self._builder.build(s, goal)
        rp = extract_relaxed_plan(rpg, goal)
        return INF if rp is None else rp.total_size


def h_ff(actions: Sequence[Action], s: State, goal: State):
    return FFHeuristic(actions)(s, goal)


def h_zero(s: State, goal: State):
    return 0


def h_plus_oracle(actions: Sequence[Action], s: State, goal: State, max_props: int = 15):
    """Optimal delete-relaxed plan length by breadth-first search over
    sets of reached atoms. Exponential; only for tiny instances."""
    used = s | goal
    for a in actions:
        used |= a.pre_mask | a.add_mask | a.del_mask
    n = bin(used).count("1")
    if n > max_props:
        raise InstanceTooLarge(f"{n} propositions exceed the oracle cap of {max_props}")
    if subset(goal, s):
        return 0
    seen = {s}
    frontier = deque([(s, 0)])
    while frontier:
        u, d = frontier.popleft()
        for a in actions:
            if a.pre_mask & u != a.pre_mask:
                continue
            v = u | a.add_mask
            if v in seen:
                continue
            if subset(goal, v):
                return d + 1
            seen.add(v)
            frontier.append((v, d + 1))
    return INF
