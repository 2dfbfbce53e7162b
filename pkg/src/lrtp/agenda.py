"""Goal agenda: pairwise goal orderings read off the relaxed planning graph,
a deterministic topological order over them, and an exact reasonable-order
check by exhaustive search used to validate the orderings on small tasks."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .heuristics import InstanceTooLarge, build_rpg
from .strips import Action, GroundProblem, State, applicable_actions, apply_action, state_ids


@dataclass(frozen=True)
class OrderingRelation:
    """Pairs ``(a, b)`` meaning goal atom ``a`` should be established before ``b``."""

    pairs: frozenset

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs


@dataclass(frozen=True)
class GoalAgenda:
    ordered_atoms: tuple

    def __len__(self):
        return len(self.ordered_atoms)

    def cumulative(self) -> list[State]:
        """Masks of g1, g1+g2, ..., the whole goal."""
        out, acc = [], 0
        for p in self.ordered_atoms:
            acc |= 1 << p
            out.append(acc)
        return out


def _rpg_achievers(actions: Sequence[Action], s0: State, goal: State):
    rpg = build_rpg(actions, s0)
    achievers = {p: [] for p in state_ids(goal)}
    for aid in sorted(rpg.act_level):
        a = actions[aid]
        for p in a.add:
            if p in achievers:
                achievers[p].append(a)
    return rpg, achievers


def _orderings(goals, achievers) -> frozenset:
    pairs = set()
    for x in goals:
        for y in goals:
            if x == y or not achievers[y]:
                continue
            # every way of making y true destroys x ...
            if not all(x in a.delete for a in achievers[y]):
                continue
            # ... and x can still be re-established without destroying y
            if any(y not in a.delete for a in achievers[x]):
                pairs.add((y, x))
    return frozenset(pairs)


def compute_orderings(actions: Sequence[Action], s0: State, goal: State) -> OrderingRelation:
    _, achievers = _rpg_achievers(actions, s0, goal)
    return OrderingRelation(_orderings(state_ids(goal), achievers))


def relaxed_plan_ordering(actions: Sequence[Action], s0: State, goal: State) -> GoalAgenda:
    """Order the goal atoms: orderings first, then easiest (lowest RPG level)
    first, then lowest id. Cycles are broken by dropping, inside each strongly
    connected component, the pair whose second atom has the lowest level."""
    rpg, achievers = _rpg_achievers(actions, s0, goal)
    goals = state_ids(goal)
    pairs = _orderings(goals, achievers)

    def key(p):
        return (rpg.prop_level.get(p, math.inf), p)

    g = nx.DiGraph()
    g.add_nodes_from(goals)
    g.add_edges_from(pairs)
    while not nx.is_directed_acyclic_graph(g):
        for comp in nx.strongly_connected_components(g):
            if len(comp) < 2:
                continue
            inside = [(a, b) for a, b in g.edges(comp) if b in comp]
            a, b = min(inside, key=lambda e: (key(e[1]), key(e[0])))
            g.remove_edge(a, b)
    order = tuple(nx.lexicographical_topological_sort(g, key=key))
    if sorted(order) != goals:
        raise AssertionError(f"agenda {order} is not a permutation of the goal atoms {goals}")
    return GoalAgenda(order)


def reachable_states(prob: GroundProblem, max_states: int = 2 ** 15):
    """All states reachable from the initial state, with successor lists."""
    succ = {prob.init: []}
    queue = deque([prob.init])
    while queue:
        u = queue.popleft()
        for aid in applicable_actions(u, prob.actions):
            v = apply_action(u, prob.actions[aid])
            succ[u].append(v)
            if v not in succ:
                if len(succ) >= max_states:
                    raise InstanceTooLarge(f"more than {max_states} reachable states")
                succ[v] = []
                queue.append(v)
    return succ


def reasonable_order_oracle(prob: GroundProblem, x: int, y: int, max_states: int = 2 ** 15) -> bool:
    """True iff ``x`` is reasonably ordered before ``y``.

    Every reachable state where ``y`` holds and ``x`` does not is checked: none
    of them may reach a state with both atoms along a path on which ``y``
    stays true. Returns False when no such state is reachable at all.
    """
    if x == y:
        return False
    succ = reachable_states(prob, max_states)
    xm, ym = 1 << x, 1 << y
    pred: dict[State, list[State]] = {}
    for u, vs in succ.items():
        if not u & ym:
            continue
        for v in vs:
            if v & ym:
                pred.setdefault(v, []).append(u)
    good = {u for u in succ if u & xm and u & ym}
    queue = deque(good)
    while queue:
        v = queue.popleft()
        for u in pred.get(v, ()):
            if u not in good:
                good.add(u)
                queue.append(u)
    starts = [u for u in succ if u & ym and not u & xm]
    if not starts:
        return False
    return not any(u in good for u in starts)
