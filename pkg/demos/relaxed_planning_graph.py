"""
The relaxed planning graph and the FF heuristic
===============================================

Deletes are ignored while the graph grows; a relaxed plan is then
extracted backwards and its size is the heuristic value.
"""

import logging

from lrtp import DATA_DIR, Action, build_rpg, extract_relaxed_plan, load_problem
from lrtp.heuristics import FFHeuristic, h_plus_oracle

logging.getLogger("lrtp.grounding").setLevel(logging.ERROR)

prob = load_problem(DATA_DIR / "blocksworld" / "domain.pddl", DATA_DIR / "blocksworld" / "p01.pddl")
print(f"{prob.name}: {prob.num_props} propositions, {len(prob.actions)} actions")

rpg = build_rpg(prob.actions, prob.init)
print("fixpoint level:", rpg.max_level)
for p in sorted(prob.names(prob.goal)):
    print(f"  goal ({p}) first appears at level {rpg.prop_level[prob.prop_id(p)]}")

# the relaxed plan, layer by layer
rp = extract_relaxed_plan(rpg, prob.goal)
for i, layer in enumerate(rp.layers):
    print(f"  layer {i}: " + ", ".join(sorted(prob.actions[a].name for a in layer)))
print("h_ff(s0) =", rp.total_size)

# the heuristic object reuses its index across calls
hff = FFHeuristic(prob.actions)
print("h_ff at the goal =", hff(prob.goal, prob.goal))

# on tiny tasks the optimal relaxed cost gives a lower bound to compare with
acts = [Action(0, "a1", set(), {0}, set()), Action(1, "a2", {0}, {1}, {0})]
print("two-step task: h_ff =", FFHeuristic(acts)(0, 0b10), " h+ =", h_plus_oracle(acts, 0, 0b10))
