"""
Checking a plan file
====================

Plans are one ground action per line.  The checker reports the first step
whose preconditions fail, or the goal atoms still missing at the end.
"""

import logging
import random
import tempfile
from pathlib import Path

from lrtp import DATA_DIR, DecisionBudget, asa_star, bench, load_problem

logging.getLogger("lrtp.grounding").setLevel(logging.ERROR)

domain = DATA_DIR / "blocksworld" / "domain.pddl"
problem = DATA_DIR / "blocksworld" / "p01.pddl"
prob = load_problem(domain, problem, prune=False)

# find a plan with a generous budget and write it out
plan = asa_star(prob.actions, prob.init, prob.goal, DecisionBudget(amount=5000), random.Random(0))
work = Path(tempfile.mkdtemp())
(work / "good.plan").write_text(bench.format_plan(prob, plan))
print(bench.format_plan(prob, plan), end="")
print("verdict:", bench.validate_plan_file(domain, problem, work / "good.plan"))

# swapping two steps breaks it
lines = (work / "good.plan").read_text().splitlines()
lines[0], lines[1] = lines[1], lines[0]
(work / "bad.plan").write_text("\n".join(lines) + "\n")
print("verdict:", bench.validate_plan_file(domain, problem, work / "bad.plan"))
