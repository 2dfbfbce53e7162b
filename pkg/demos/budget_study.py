"""
A small budget study
====================

Run the bundled single-problem manifest and print the table it writes.
Expansion budgets make the run reproducible on any machine.
"""

import logging
import tempfile
from pathlib import Path

from lrtp import DATA_DIR, bench

logging.getLogger("lrtp.grounding").setLevel(logging.ERROR)

specs, _ = bench.load_manifest(DATA_DIR / "manifests" / "single.ini")
stats = []
for spec in specs:
    stats.extend(bench.run_experiment(spec)[0])

out = Path(tempfile.mkdtemp()) / "single.csv"
bench.emit_csv(stats, out)

print(f"{'variant':8}{'budget':>8}{'success %':>11}{'avg len':>9}{'decisions':>11}")
for row in bench.read_csv(out):
    print(f"{row['variant']:8}{row['budget']:>8}{row['success_pct']:>11.1f}"
          f"{row['avg_plan_len']:>9.2f}{row['avg_decisions']:>11.2f}")
print("csv written to", out)
