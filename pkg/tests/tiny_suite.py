"""Curated tiny STRIPS instances (at most 15 propositions each)."""

import random
from itertools import permutations

from conftest import chain_problem, make_problem
from lrtp.grounding import ground
from lrtp.pddl import parse_domain, parse_problem

GRIPPER = """
(define (domain gripper-strips)
  (:predicates (room ?r) (ball ?b) (gripper ?g) (at-robby ?r) (at ?b ?r) (free ?g) (carry ?o ?g))
  (:action move :parameters (?from ?to)
    :precondition (and (room ?from) (room ?to) (at-robby ?from))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper) (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room)) (not (free ?gripper))))
  (:action drop :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper) (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper) (not (carry ?obj ?gripper)))))
"""


def gripper(n_balls):
    balls = " ".join(f"b{i}" for i in range(n_balls))
    at = " ".join(f"(at b{i} ra)" for i in range(n_balls))
    isball = " ".join(f"(ball b{i})" for i in range(n_balls))
    goal = " ".join(f"(at b{i} rb)" for i in range(n_balls))
    prob = f"""(define (problem g{n_balls}) (:domain gripper-strips)
      (:objects ra rb {balls} left)
      (:init (room ra) (room rb) {isball} (gripper left) (at-robby ra) (free left) {at})
      (:goal (and {goal})))"""
    return ground(parse_domain(GRIPPER), parse_problem(prob))


def blocks3(init_on, init_table, goal_on, name):
    """Three-operator blocksworld on blocks a, b, c (12 propositions)."""
    blocks = "abc"
    props = [f"on {x} {y}" for x, y in permutations(blocks, 2)]
    props += [f"ontable {x}" for x in blocks] + [f"clear {x}" for x in blocks]
    acts = []
    for x, y, z in permutations(blocks, 3):
        acts.append((f"move {x} {y} {z}", [f"on {x} {y}", f"clear {x}", f"clear {z}"],
                     [f"on {x} {z}", f"clear {y}"], [f"on {x} {y}", f"clear {z}"]))
    for x, y in permutations(blocks, 2):
        acts.append((f"totable {x} {y}", [f"on {x} {y}", f"clear {x}"],
                     [f"ontable {x}", f"clear {y}"], [f"on {x} {y}"]))
        acts.append((f"fromtable {x} {y}", [f"ontable {x}", f"clear {x}", f"clear {y}"],
                     [f"on {x} {y}"], [f"ontable {x}", f"clear {y}"]))
    covered = {x for x, _ in init_on}
    below = {y for _, y in init_on}
    init = [f"on {x} {y}" for x, y in init_on] + [f"ontable {x}" for x in init_table]
    init += [f"clear {x}" for x in blocks if x not in below]
    assert covered | set(init_table) == set(blocks)
    return make_problem(props, acts, init, [f"on {x} {y}" for x, y in goal_on], name)


def interference(init=()):
    """Achieving q always destroys p; p can be re-achieved without touching q."""
    return make_problem(["p", "q"], [("make-p", [], ["p"], []), ("make-q", [], ["q"], ["p"])],
                        list(init), ["p", "q"], "interference")


def cascade():
    """r destroys p and q, q destroys p: the only good order is r, q, p."""
    return make_problem(
        ["p", "q", "r"],
        [("make-p", [], ["p"], []), ("make-q", [], ["q"], ["p"]), ("make-r", [], ["r"], ["p", "q"])],
        [], ["p", "q", "r"], "cascade")


def guarded_interference():
    """Like ``interference`` but the achievers need a tool that must be fetched."""
    return make_problem(
        ["tool", "p", "q", "spare"],
        [("fetch", [], ["tool"], []),
         ("make-p", ["tool"], ["p"], []),
         ("make-q", ["tool"], ["q", "spare"], ["p"]),
         ("drop-spare", ["spare"], [], ["spare"])],
        [], ["p", "q"], "guarded")


def mutual():
    """Each goal's only achiever destroys the other: no order helps."""
    return make_problem(["p", "q", "r"],
                        [("make-p", [], ["p"], ["q"]), ("make-q", [], ["q"], ["p"]),
                         ("make-r", [], ["r"], [])],
                        [], ["p", "q", "r"], "mutual")


def independent():
    return make_problem(["p", "q"], [("make-p", [], ["p"], []), ("make-q", [], ["q"], [])],
                        [], ["p", "q"], "independent")


def two_step():
    """a1: () -> p ; a2: p -> q deleting p."""
    return make_problem(["p", "q"], [("a1", [], ["p"], []), ("a2", ["p"], ["q"], ["p"])],
                        [], ["q"], "two-step")


def unreachable():
    return make_problem(["p", "q", "r"], [("a", ["p"], ["q"], [])], ["p"], ["r"], "unreachable")


def key_door():
    return make_problem(
        ["at-1", "at-2", "key-at-1", "has-key", "open"],
        [("take-key", ["at-1", "key-at-1"], ["has-key"], ["key-at-1"]),
         ("unlock", ["at-1", "has-key"], ["open"], []),
         ("go-12", ["at-1", "open"], ["at-2"], ["at-1"]),
         ("go-21", ["at-2", "open"], ["at-1"], ["at-2"])],
        ["at-1", "key-at-1"], ["at-2", "has-key"], "key-door")


def ring(n=6):
    pos = [f"at {i}" for i in range(n)]
    acts = []
    for i in range(n):
        j = (i + 1) % n
        acts.append((f"cw {i}", [pos[i]], [pos[j]], [pos[i]]))
        acts.append((f"ccw {j}", [pos[j]], [pos[i]], [pos[j]]))
    return make_problem(pos, acts, [pos[0]], [pos[n // 2]], f"ring{n}")


def trap():
    """One branch leads to a state with no applicable action."""
    return make_problem(
        ["s", "a", "b", "dead", "g"],
        [("to-dead", ["s"], ["dead"], ["s"]), ("to-a", ["s"], ["a"], ["s"]),
         ("a-b", ["a"], ["b"], ["a"]), ("b-g", ["b"], ["g"], ["b"])],
        ["s"], ["g"], "trap")


def lights(n=3):
    """Independent switches plus a master switch that resets the others."""
    props = [f"on {i}" for i in range(n)] + [f"off {i}" for i in range(n)]
    acts = []
    for i in range(n):
        acts.append((f"switch-on {i}", [f"off {i}"], [f"on {i}"], [f"off {i}"]))
        acts.append((f"switch-off {i}", [f"on {i}"], [f"off {i}"], [f"on {i}"]))
    acts.append(("master", [f"on {n - 1}"], [f"off {i}" for i in range(n - 1)],
                 [f"on {i}" for i in range(n - 1)]))
    return make_problem(props, acts, [f"off {i}" for i in range(n)], [f"on {i}" for i in range(n)], f"lights{n}")


def logistics_line():
    locs = ["l1", "l2", "l3"]
    props = [f"truck {l}" for l in locs] + [f"pkg {l}" for l in locs] + ["in"]
    acts = []
    for x, y in (("l1", "l2"), ("l2", "l1"), ("l2", "l3"), ("l3", "l2")):
        acts.append((f"drive {x} {y}", [f"truck {x}"], [f"truck {y}"], [f"truck {x}"]))
    for l in locs:
        acts.append((f"load {l}", [f"truck {l}", f"pkg {l}"], ["in"], [f"pkg {l}"]))
        acts.append((f"unload {l}", [f"truck {l}", "in"], [f"pkg {l}"], ["in"]))
    return make_problem(props, acts, ["truck l2", "pkg l1"], ["pkg l3", "truck l1"], "logistics-line")


def fuel():
    """Moving burns fuel; refuelling only at the depot."""
    props = ["at-d", "at-m", "at-g", "f2", "f1", "f0"]
    acts = []
    for x, y in (("d", "m"), ("m", "d"), ("m", "g"), ("g", "m")):
        for hi, lo in (("f2", "f1"), ("f1", "f0")):
            acts.append((f"move {x} {y} {hi}", [f"at-{x}", hi], [f"at-{y}", lo], [f"at-{x}", hi]))
    acts.append(("refuel", ["at-d", "f0"], ["f2"], ["f0"]))
    acts.append(("refuel1", ["at-d", "f1"], ["f2"], ["f1"]))
    return make_problem(props, acts, ["at-d", "f1"], ["at-g"], "fuel")


def random_instance(seed, n_props=7, n_actions=8):
    rng = random.Random(seed)
    props = [f"x{i}" for i in range(n_props)]
    acts = []
    for k in range(n_actions):
        pre = rng.sample(props, rng.randint(0, 2))
        add = rng.sample([p for p in props if p not in pre] or props, rng.randint(1, 2))
        dele = rng.sample([p for p in props if p not in add], rng.randint(0, 2))
        acts.append((f"r{k}", pre, add, dele))
    init = rng.sample(props, 2)
    goal = rng.sample(props, rng.randint(1, 3))
    return make_problem(props, acts, init, goal, f"random{seed}")


def heuristic_suite():
    base = [
        chain_problem(), two_step(), unreachable(), interference(), interference(["p"]),
        cascade(), guarded_interference(), mutual(), independent(), key_door(), ring(6),
        trap(), lights(3), logistics_line(), fuel(), gripper(1), gripper(2),
        blocks3([("c", "a")], ["a", "b"], [("a", "b"), ("b", "c")], "sussman"),
        blocks3([("a", "b"), ("b", "c")], ["c"], [("c", "b"), ("b", "a")], "reverse"),
    ]
    return base + [random_instance(s) for s in range(8)]


def interference_suite():
    return [interference(), interference(["p"]), cascade(), guarded_interference(), mutual(), independent()]


def heuristic_violations(prob):
    """Check h_ff against the h+ oracle on every state of ``prob``."""
    from lrtp.heuristics import INF, FFHeuristic, h_plus_oracle
    from lrtp.strips import subset

    hff = FFHeuristic(prob.actions)
    bad = []
    for s in range(1 << prob.num_props):
        f = hff(s, prob.goal)
        hp = h_plus_oracle(prob.actions, s, prob.goal)
        if hp > f:
            bad.append((s, "h+ > h_ff", hp, f))
        if (f == 0) != subset(prob.goal, s):
            bad.append((s, "h_ff = 0 mismatch", hp, f))
        if (f == INF) != (hp == INF):
            bad.append((s, "infinity mismatch", hp, f))
    return bad
