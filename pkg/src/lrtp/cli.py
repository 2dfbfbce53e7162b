"""Command line: ``lrtp run``, ``lrtp validate``, ``lrtp agenda``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bench
from .agenda import compute_orderings, relaxed_plan_ordering
from .grounding import load_problem
from .heuristics import build_rpg
from .pddl import PDDLError


def _run(args) -> int:
    overrides = {
        "domain": args.domain,
        "problems": " ".join(args.problem) if args.problem else None,
        "variants": " ".join(args.variant) if args.variant else None,
        "budgets": " ".join(args.budget) if args.budget else None,
        "episodes": args.episodes,
        "max_actions": args.max_actions,
        "seed": args.seed,
        "out": args.out,
        "workers": args.workers,
    }
    overrides = {k: str(v) for k, v in overrides.items() if v is not None}
    try:
        if args.manifest:
            specs, settings = bench.load_manifest(args.manifest, overrides)
        else:
            specs = [bench.spec_from_mapping(overrides, Path.cwd(), "cli")]
            settings = overrides
    except bench.ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    out = settings.get("out", "results.csv")
    workers = int(settings.get("workers", 1))
    trace = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        all_stats = []
        for spec in specs:
            stats, failures = bench.run_experiment(spec, workers=workers, trace=trace)
            all_stats.extend(stats)
            for f in failures:
                print(f"failed: {f.domain}/{f.problem}: {f.error}", file=sys.stderr)
    finally:
        if trace is not None:
            trace.close()
    bench.emit_csv(all_stats, out)
    for st in all_stats:
        print(f"{st.domain:12} {st.problem:14} {st.variant:4} {st.budget_kind}:{st.budget:<6} "
              f"success={st.success_pct:6.1f}%  avg_len={st.avg_plan_len:7.2f}  first={st.first_plan_len}")
    print(f"wrote {len(all_stats)} rows to {out}")
    return 0


def _validate(args) -> int:
    try:
        verdict = bench.validate_plan_file(args.domain, args.problem, args.plan)
    except bench.UnknownAction as exc:
        print(f"rejected: {exc}")
        return 1
    except (PDDLError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if verdict.valid:
        print(f"accepted: {verdict.steps} steps reach the goal")
        return 0
    where = f" at step {verdict.failed_step}" if verdict.failed_step else ""
    print(f"rejected{where}: {verdict.reason}")
    return 1


def _agenda(args) -> int:
    try:
        prob = load_problem(args.domain, args.problem)
    except (PDDLError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rpg = build_rpg(prob.actions, prob.init)
    rel = compute_orderings(prob.actions, prob.init, prob.goal)
    agenda = relaxed_plan_ordering(prob.actions, prob.init, prob.goal)
    print("orderings (establish first -> then):")
    for a, b in rel:
        print(f"  ({prob.propositions[a]}) -> ({prob.propositions[b]})")
    if not len(rel):
        print("  none")
    print("agenda:")
    for i, p in enumerate(agenda.ordered_atoms, 1):
        lvl = rpg.prop_level.get(p, "unreachable")
        print(f"  {i}. ({prob.propositions[p]})  level={lvl}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrtp", description="Real-time STRIPS planning experiments")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment manifest or a single configuration")
    run.add_argument("manifest", nargs="?")
    run.add_argument("--domain")
    run.add_argument("--problem", nargs="+")
    run.add_argument("--variant", nargs="+", choices=["base", "I", "J", "IJ"])
    run.add_argument("--budget", nargs="+", help="exp:N or ms:N")
    run.add_argument("--episodes", type=int)
    run.add_argument("--max-actions", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--out")
    run.add_argument("--workers", type=int)
    run.add_argument("--trace", help="write per-decision NDJSON trace here")
    run.set_defaults(func=_run)

    val = sub.add_parser("validate", help="check a plan file against a problem")
    val.add_argument("domain")
    val.add_argument("problem")
    val.add_argument("plan")
    val.set_defaults(func=_validate)

    ag = sub.add_parser("agenda", help="print goal orderings and the goal agenda")
    ag.add_argument("domain")
    ag.add_argument("problem")
    ag.set_defaults(func=_agenda)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
