"""
One LRTP episode, with and without jumps
========================================

Each decision searches under a fixed budget.  With jumps the whole
selected plan is buffered; the unused time while the buffer drains is
banked and spent by the next search.
"""

import io
import json
import logging
import random

from lrtp import DATA_DIR, DecisionBudget, RunConfig, load_problem, lrtp_episode

logging.getLogger("lrtp.grounding").setLevel(logging.ERROR)

prob = load_problem(DATA_DIR / "toys" / "domain.pddl", DATA_DIR / "toys" / "p01.pddl")
budget = DecisionBudget(amount=10)

for variant in ("base", "I", "J", "IJ"):
    trace = io.StringIO()
    res = lrtp_episode(prob, RunConfig.for_variant(variant, budget=budget), random.Random(1), trace=trace)
    steps = [json.loads(line) for line in trace.getvalue().splitlines()]
    widest = max((s["allowance"] for s in steps), default=0)
    print(f"{variant:4} success={res.success!s:5} plan={res.plan_length:3} decisions={res.decisions:3} "
          f"widest search={widest}")
