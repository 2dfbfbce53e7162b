"""
Goal agenda
===========

Pairs of goal atoms are ordered when every way of achieving one destroys
the other; the rest are sorted by how deep they sit in the relaxed graph.
"""

from lrtp import Action, compute_orderings, relaxed_plan_ordering
from lrtp.agenda import reasonable_order_oracle
from lrtp.strips import GroundProblem

# making q always deletes p, but p can be made again without touching q
props = ("p", "q")
acts = (Action(0, "make-p", set(), {0}, set()), Action(1, "make-q", set(), {1}, {0}))
prob = GroundProblem(props, acts, init=0, goal=0b11, name="interference")

rel = compute_orderings(prob.actions, prob.init, prob.goal)
for first, then in rel:
    print(f"establish ({props[first]}) before ({props[then]})")
    # exhaustive check over all reachable states
    print("  confirmed by search:", reasonable_order_oracle(prob, first, then))

agenda = relaxed_plan_ordering(prob.actions, prob.init, prob.goal)
print("agenda:", [props[p] for p in agenda.ordered_atoms])
print("cumulative subgoals:", [[props[i] for i in range(2) if m >> i & 1] for m in agenda.cumulative()])
