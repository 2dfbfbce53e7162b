import logging
from collections import deque
from pathlib import Path

import pytest

from lrtp import DATA_DIR
from lrtp.strips import Action, GroundProblem, to_state

logging.getLogger("lrtp.grounding").setLevel(logging.ERROR)


def make_problem(props, actions, init, goal, name="toy"):
    """Build a GroundProblem from names.

    ``actions`` is a list of ``(name, pre, add, delete)`` with atom names.
    """
    idx = {p: i for i, p in enumerate(props)}
    acts = tuple(Action(i, n, {idx[x] for x in pre}, {idx[x] for x in add}, {idx[x] for x in dele})
                 for i, (n, pre, add, dele) in enumerate(actions))
    return GroundProblem(tuple(props), acts, to_state(idx[p] for p in init),
                         to_state(idx[p] for p in goal), name)


def chain_problem():
    """s0 -a1-> s1 -a2-> s2 -a3-> s3, one atom per position."""
    return make_problem(
        ["p0", "p1", "p2", "p3"],
        [("a1", ["p0"], ["p1"], ["p0"]),
         ("a2", ["p1"], ["p2"], ["p1"]),
         ("a3", ["p2"], ["p3"], ["p2"])],
        ["p0"], ["p3"], name="chain")


def bfs_optimum(prob):
    """Optimal plan length by breadth-first search over real states, or None."""
    init = prob.init
    if prob.goal & init == prob.goal:
        return 0
    dist = {init: 0}
    queue = deque([init])
    while queue:
        u = queue.popleft()
        for a in prob.actions:
            if a.pre_mask & u != a.pre_mask:
                continue
            v = (u & ~a.del_mask) | a.add_mask
            if v in dist:
                continue
            dist[v] = dist[u] + 1
            if prob.goal & v == prob.goal:
                return dist[v]
            queue.append(v)
    return None


def reachable_count(prob):
    seen = {prob.init}
    queue = deque([prob.init])
    while queue:
        u = queue.popleft()
        for a in prob.actions:
            if a.pre_mask & u == a.pre_mask:
                v = (u & ~a.del_mask) | a.add_mask
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return len(seen)


@pytest.fixture
def chain():
    return chain_problem()


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR
