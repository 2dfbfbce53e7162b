"""
Budget-bounded A* and frontier selection
========================================

A* runs until its expansion budget is spent; the open node with the
lowest f (then g) is chosen and the path to it is the selected plan.
"""

import logging
import random

from lrtp import DATA_DIR, DecisionBudget, bounded_astar, load_problem, select_frontier_state

logging.getLogger("lrtp.grounding").setLevel(logging.ERROR)

prob = load_problem(DATA_DIR / "toys" / "domain.pddl", DATA_DIR / "toys" / "p04.pddl")
rng = random.Random(0)

for amount in (1, 10, 100, 1000):
    frontier = bounded_astar(prob.actions, prob.init, prob.goal, DecisionBudget(amount=amount))
    best = select_frontier_state(frontier, rng)
    reached = "goal" if frontier.goal_node is best else "partial"
    print(f"budget {amount:5}: {frontier.expansions:4} expansions, open {len(frontier.open):4}, "
          f"picked f={best.f:.0f} g={best.g} ({reached})")

print("plan at budget 1000:")
for name in prob.plan_names(best.path()):
    print("  ", name)
