import random

import pytest

from conftest import make_problem
from lrtp.agenda import (compute_orderings, reachable_states, reasonable_order_oracle,
                         relaxed_plan_ordering)
from lrtp.heuristics import InstanceTooLarge
from lrtp.strips import state_ids
from tiny_suite import heuristic_suite, interference, interference_suite, random_instance


def orderings(prob):
    return compute_orderings(prob.actions, prob.init, prob.goal)


def agenda(prob):
    return relaxed_plan_ordering(prob.actions, prob.init, prob.goal)


class TestOrderings:
    def test_interference(self):
        prob = interference()
        p, q = prob.prop_id("p"), prob.prop_id("q")
        rel = orderings(prob)
        assert (q, p) in rel
        assert (p, q) not in rel
        assert len(rel) == 1

    def test_independent(self):
        prob = make_problem(["p", "q"], [("mp", [], ["p"], []), ("mq", [], ["q"], [])], [], ["p", "q"])
        assert len(orderings(prob)) == 0

    def test_single_goal(self):
        prob = make_problem(["p"], [("mp", [], ["p"], [])], [], ["p"])
        assert len(orderings(prob)) == 0

    def test_mutual_destruction_is_not_ordered(self):
        prob = make_problem(["p", "q"], [("mp", [], ["p"], ["q"]), ("mq", [], ["q"], ["p"])], [], ["p", "q"])
        assert len(orderings(prob)) == 0

    def test_goal_without_achiever_is_not_ordered(self):
        prob = make_problem(["p", "q"], [("mp", [], ["p"], [])], [], ["p", "q"])
        assert len(orderings(prob)) == 0

    def test_iteration_is_sorted(self):
        from tiny_suite import cascade
        rel = orderings(cascade())
        assert list(rel) == sorted(rel.pairs)
        assert len(rel) == 3


class TestAgenda:
    def test_levels_break_ties(self):
        prob = make_problem(
            ["q", "x", "y", "p"],
            [("mx", [], ["x"], []), ("my", ["x"], ["y"], []), ("mq", ["y"], ["q"], []), ("mp", [], ["p"], [])],
            [], ["q", "p"])
        p, q = prob.prop_id("p"), prob.prop_id("q")
        assert agenda(prob).ordered_atoms == (p, q)

    def test_interference_puts_q_first(self):
        prob = interference()
        assert agenda(prob).ordered_atoms == (prob.prop_id("q"), prob.prop_id("p"))

    def test_goal_in_init_sorted_by_id(self):
        prob = make_problem(["c", "a", "b"], [], ["a", "b", "c"], ["b", "c", "a"])
        assert agenda(prob).ordered_atoms == (0, 1, 2)

    def test_cascade_order(self):
        from tiny_suite import cascade
        prob = cascade()
        assert [prob.propositions[p] for p in agenda(prob).ordered_atoms] == ["r", "q", "p"]

    def test_cycle_is_broken(self):
        # each goal's only achiever destroys the next one around the ring
        prob = make_problem(
            ["x", "y", "z"],
            [("mx", [], ["x"], ["z"]), ("my", [], ["y"], ["x"]), ("mz", [], ["z"], ["y"])],
            [], ["x", "y", "z"])
        x, y, z = 0, 1, 2
        assert set(orderings(prob)) == {(y, x), (z, y), (x, z)}
        # all at level 1; the pair with the lowest (then, first) key is dropped
        assert agenda(prob).ordered_atoms == (x, z, y)

    def test_cumulative(self):
        from tiny_suite import cascade
        ag = agenda(cascade())
        cum = ag.cumulative()
        assert len(cum) == len(ag)
        for prev, nxt in zip(cum, cum[1:]):
            assert prev & nxt == prev and prev != nxt
        assert cum[-1] == cascade().goal

    def test_unreachable_goal_last(self):
        prob = make_problem(["z", "p"], [("mp", [], ["p"], [])], [], ["z", "p"])
        assert agenda(prob).ordered_atoms == (prob.prop_id("p"), prob.prop_id("z"))


SUITE = heuristic_suite() + [random_instance(s, n_props=8, n_actions=10) for s in range(100, 140)]


@pytest.mark.parametrize("prob", SUITE, ids=lambda p: p.name)
def test_agenda_is_permutation_of_goal(prob):
    rng = random.Random(prob.name)
    states = [prob.init] + [rng.randrange(1 << prob.num_props) for _ in range(5)]
    for s in states:
        order = relaxed_plan_ordering(prob.actions, s, prob.goal).ordered_atoms
        assert sorted(order) == state_ids(prob.goal)
        assert len(set(order)) == len(order)


@pytest.mark.parametrize("prob", interference_suite(), ids=lambda p: p.name)
def test_emitted_pairs_confirmed_by_oracle(prob):
    for first, then in orderings(prob):
        assert reasonable_order_oracle(prob, first, then), (prob.propositions[first], prob.propositions[then])


def test_interference_suite_emits_pairs():
    assert sum(len(orderings(p)) for p in interference_suite()) >= 5


class TestOracle:
    def test_irreflexive(self):
        prob = interference()
        assert not reasonable_order_oracle(prob, 0, 0)

    def test_interference(self):
        prob = interference()
        p, q = prob.prop_id("p"), prob.prop_id("q")
        assert reasonable_order_oracle(prob, q, p)
        assert not reasonable_order_oracle(prob, p, q)

    def test_independent(self):
        prob = make_problem(["p", "q"], [("mp", [], ["p"], []), ("mq", [], ["q"], [])], [], ["p", "q"])
        assert not reasonable_order_oracle(prob, 0, 1)
        assert not reasonable_order_oracle(prob, 1, 0)

    def test_vacuous_start_set(self):
        # p can never hold without q already holding
        prob = make_problem(["p", "q"], [("mq", [], ["q"], []), ("mp", ["q"], ["p"], [])], [], ["p", "q"])
        assert not reasonable_order_oracle(prob, prob.prop_id("q"), prob.prop_id("p"))

    def test_state_cap(self):
        from tiny_suite import gripper
        with pytest.raises(InstanceTooLarge):
            reachable_states(gripper(2), max_states=4)
