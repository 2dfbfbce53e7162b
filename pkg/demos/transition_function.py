"""
States, actions and the transition function
===========================================

A state is an int whose set bits are the true propositions.
"""

from lrtp import Action, apply_action, apply_plan, is_solution
from lrtp.strips import GroundProblem, state_ids

# two propositions: p (bit 0) and q (bit 1)
P, Q = 0, 1
make_p = Action(0, "make-p", pre=set(), add={P}, delete=set())
p_to_q = Action(1, "p-to-q", pre={P}, add={Q}, delete={P})

# applying an action removes its deletes and then adds its adds
s = apply_action(0, make_p)
print("after make-p:", state_ids(s))
print("after p-to-q:", state_ids(apply_action(s, p_to_q)))

# an inapplicable action gives None
print("p-to-q from the empty state:", apply_action(0, p_to_q))

# plans compose step by step
prob = GroundProblem(("p", "q"), (make_p, p_to_q), init=0, goal=1 << Q, name="two-step")
print("plan reaches:", prob.names(apply_plan(prob.init, [0, 1], prob.actions)))
print("is a solution:", is_solution(prob, [0, 1]), "| one step only:", is_solution(prob, [0]))
