"""STRIPS model: propositions, states, ground actions and the transition function.

States are plain Python ints used as bit vectors: bit ``i`` is set iff
proposition ``i`` holds.  Ints are immutable, hash cheaply and give
O(#props / word) set algebra, which is what the search loop needs.
An inapplicable action (or plan) yields ``None`` rather than raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

State = int
Plan = list


def to_state(ids: Iterable[int]) -> State:
    s = 0
    for i in ids:
        s |= 1 << i
    return s


def state_ids(s: State) -> list[int]:
    """Ascending proposition ids contained in ``s``."""
    out = []
    while s:
        low = s & -s
        out.append(low.bit_length() - 1)
        s ^= low
    return out


def subset(a: State, b: State) -> bool:
    return a & b == a


@dataclass(frozen=True)
class Action:
    id: int
    name: str
    pre: frozenset
    add: frozenset
    delete: frozenset
    cost: int = 1
    pre_mask: int = field(init=False, repr=False, compare=False)
    add_mask: int = field(init=False, repr=False, compare=False)
    del_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pre", frozenset(self.pre))
        object.__setattr__(self, "add", frozenset(self.add))
        object.__setattr__(self, "delete", frozenset(self.delete))
        object.__setattr__(self, "pre_mask", to_state(self.pre))
        object.__setattr__(self, "add_mask", to_state(self.add))
        object.__setattr__(self, "del_mask", to_state(self.delete))


@dataclass(frozen=True)
class GroundProblem:
    """The tuple (A, s0, g) plus the interned proposition table."""

    propositions: tuple
    actions: tuple
    init: State
    goal: State
    name: str = ""
    domain_name: str = ""

    def __post_init__(self):
        n = len(self.propositions)
        if len(set(self.propositions)) != n:
            raise ValueError("proposition names must be unique")
        limit = 1 << n
        for s in (self.init, self.goal):
            if s < 0 or s >= limit:
                raise ValueError("state refers to unknown proposition ids")
        for i, a in enumerate(self.actions):
            if a.id != i:
                raise ValueError(f"action ids must be dense: {a.name!r} has id {a.id}, expected {i}")
            if (a.pre_mask | a.add_mask | a.del_mask) >= limit:
                raise ValueError(f"action {a.name!r} refers to unknown proposition ids")

    @property
    def num_props(self) -> int:
        return len(self.propositions)

    def prop_id(self, name: str) -> int:
        return self._prop_index[name]

    def action_id(self, name: str) -> int:
        return self._action_index[name]

    @property
    def _prop_index(self) -> dict:
        idx = self.__dict__.get("_pidx")
        if idx is None:
            idx = {p: i for i, p in enumerate(self.propositions)}
            object.__setattr__(self, "_pidx", idx)
        return idx

    @property
    def _action_index(self) -> dict:
        idx = self.__dict__.get("_aidx")
        if idx is None:
            idx = {a.name: a.id for a in self.actions}
            object.__setattr__(self, "_aidx", idx)
        return idx

    def state(self, names: Iterable[str]) -> State:
        return to_state(self.prop_id(n) for n in names)

    def names(self, s: State) -> list[str]:
        return [self.propositions[i] for i in state_ids(s)]

    def plan_names(self, plan: Sequence[int]) -> list[str]:
        return [self.actions[a].name for a in plan]


def apply_action(s: State, a: Action) -> Optional[State]:
    if a.pre_mask & s != a.pre_mask:
        return None
    return (s & ~a.del_mask) | a.add_mask


def apply_plan(s: State, plan: Sequence[int], actions: Sequence[Action]) -> Optional[State]:
    for aid in plan:
        s = apply_action(s, actions[aid])
        if s is None:
            return None
    return s


def is_solution(prob: GroundProblem, plan: Sequence[int]) -> bool:
    end = apply_plan(prob.init, plan, prob.actions)
    return end is not None and subset(prob.goal, end)


def applicable_actions(s: State, actions: Sequence[Action]) -> list[int]:
    return sorted(a.id for a in actions if a.pre_mask & s == a.pre_mask)


class SuccessorGenerator:
    """Applicable-action lookup indexed by one precondition per action.

    Equivalent to :func:`applicable_actions` but only tests actions whose
    indexed precondition is in the state.
    """

    def __init__(self, actions: Sequence[Action]):
        self.actions = actions
        self._free = []
        self._by_prop: dict[int, list[Action]] = {}
        for a in actions:
            if not a.pre:
                self._free.append(a)
            else:
                self._by_prop.setdefault(max(a.pre), []).append(a)

    def __call__(self, s: State) -> list[int]:
        out = [a.id for a in self._free]
        for p in state_ids(s):
            for a in self._by_prop.get(p, ()):
                if a.pre_mask & s == a.pre_mask:
                    out.append(a.id)
        out.sort()
        return out
