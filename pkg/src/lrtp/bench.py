"""Experiment batches: run LRTP variants over problems and budgets, aggregate
success percentage and plan lengths, and write/read the results CSV.

A manifest is an INI file.  Every section other than ``[DEFAULT]`` is one
experiment; keys in ``[DEFAULT]`` apply to all of them::

    [DEFAULT]
    seed = 7
    out = results.csv

    [rovers]
    domain = rovers/domain.pddl
    problems = rovers/p01.pddl rovers/p02.pddl    ; files or directories
    variants = base I J IJ
    budgets = exp:50 exp:200                      ; exp:N expansions, ms:N millis
    episodes = 100
    max_actions = 500
    heuristic = ff                                ; ff | zero
    learning = false

Run-level keys (``out``, ``workers``) may only appear in ``[DEFAULT]``.

Relative paths are resolved against the manifest's directory.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .grounding import ground
from .pddl import PDDLError, parse_domain_file, parse_problem_file, read_sexpr
from .realtime import VARIANTS, EpisodeResult, GlobalLimit, RunConfig, lrtp_run
from .search import DecisionBudget
from .strips import GroundProblem, apply_action, subset

log = logging.getLogger(__name__)

CSV_COLUMNS = ("domain", "problem", "variant", "budget_kind", "budget", "episodes", "success_pct",
               "avg_plan_len", "first_plan_len", "avg_decisions", "avg_expansions")


class ManifestError(ValueError):
    pass


class UnknownAction(PDDLError):
    def __init__(self, line_no: int, text: str):
        self.line_no, self.text = line_no, text
        super().__init__(f"plan line {line_no}: no ground action matches {text}")


@dataclass(frozen=True)
class ExperimentSpec:
    domain: Path
    problems: tuple
    variants: tuple = ("base", "I", "J", "IJ")
    budgets: tuple = (DecisionBudget(),)
    episodes: int = 100
    max_actions: int = 500
    seed: int = 0
    heuristic: str = "ff"
    learning: bool = False
    name: str = ""

    def __post_init__(self):
        if self.episodes < 1:
            raise ManifestError("episodes must be >= 1")
        if self.max_actions < 1:
            raise ManifestError("max_actions must be >= 1")
        if not self.variants:
            raise ManifestError("at least one variant is required")
        for v in self.variants:
            if v not in VARIANTS:
                raise ManifestError(f"unknown variant {v!r}; choose from {', '.join(VARIANTS)}")
        if not self.budgets:
            raise ManifestError("at least one budget is required")
        if not Path(self.domain).is_file():
            raise ManifestError(f"domain file not found: {self.domain}")
        if not self.problems:
            raise ManifestError("no problem files")
        for p in self.problems:
            if not Path(p).is_file():
                raise ManifestError(f"problem file not found: {p}")


@dataclass
class ExperimentStats:
    domain: str
    problem: str
    variant: str
    budget_kind: str
    budget: int
    episodes: int
    success_pct: float
    avg_plan_len: float
    first_plan_len: int
    avg_decisions: float
    avg_expansions: float
    rows: list = field(default_factory=list, repr=False)

    @classmethod
    def from_episodes(cls, domain, problem, variant, budget: DecisionBudget,
                      rows: Sequence[EpisodeResult], max_actions: int) -> "ExperimentStats":
        n = len(rows)
        wins = [r for r in rows if r.success]
        if wins:
            avg_len = sum(r.plan_length for r in wins) / len(wins)
            first = wins[0].plan_length
        else:
            avg_len = float(max_actions)
            first = max_actions
        return cls(
            domain=domain, problem=problem, variant=variant,
            budget_kind=budget.kind.value, budget=budget.amount, episodes=n,
            success_pct=100.0 * len(wins) / n if n else 0.0,
            avg_plan_len=avg_len, first_plan_len=first,
            avg_decisions=sum(r.decisions for r in rows) / n if n else 0.0,
            avg_expansions=sum(r.expansions_total for r in rows) / n if n else 0.0,
            rows=list(rows),
        )

    def as_row(self) -> dict:
        return {c: getattr(self, c) for c in CSV_COLUMNS}


@dataclass
class CellFailure:
    domain: str
    problem: str
    error: str


def cell_seed(base_seed: int, domain: str, problem: str, variant: str, budget: DecisionBudget) -> int:
    key = f"{base_seed}|{domain}|{problem}|{variant}|{budget.kind.value}|{budget.amount}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def _run_cell(args):
    prob, cfg, labels, max_actions, want_trace = args
    buf = io.StringIO() if want_trace else None
    rows = lrtp_run(prob, cfg, trace=buf)
    stats = ExperimentStats.from_episodes(*labels, cfg.budget, rows, max_actions)
    return stats, (buf.getvalue() if buf is not None else "")


def run_experiment(spec: ExperimentSpec, workers: int = 1, trace=None):
    """Run every (problem x variant x budget) cell.

    Returns ``(stats, failures)``; a problem that fails to parse or ground is
    reported in ``failures`` and the remaining cells still run.
    """
    failures: list[CellFailure] = []
    cells = []
    try:
        dom = parse_domain_file(spec.domain)
    except (PDDLError, OSError) as exc:
        return [], [CellFailure(str(spec.domain), "*", str(exc))]
    for ppath in spec.problems:
        pname = Path(ppath).stem
        try:
            prob = ground(dom, parse_problem_file(ppath))
        except (PDDLError, OSError) as exc:
            log.error("%s: %s", ppath, exc)
            failures.append(CellFailure(dom.name, pname, str(exc)))
            continue
        for variant in spec.variants:
            for budget in spec.budgets:
                cfg = RunConfig.for_variant(
                    variant, budget=budget, global_limit=GlobalLimit(episodes=spec.episodes),
                    max_actions_per_episode=spec.max_actions, learning=spec.learning,
                    heuristic=spec.heuristic,
                    seed=cell_seed(spec.seed, dom.name, pname, variant, budget))
                cells.append((prob, cfg, (dom.name, pname, variant), spec.max_actions, trace is not None))
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_run_cell, cells))
    else:
        outputs = [_run_cell(c) for c in cells]
    stats = []
    for cell, (st, text) in zip(cells, outputs):
        stats.append(st)
        if trace is not None:
            trace.write('{"cell": %s}\n' % _json_cell(st))
            trace.write(text)
    return stats, failures


def _json_cell(st: ExperimentStats) -> str:
    import json
    return json.dumps({"domain": st.domain, "problem": st.problem, "variant": st.variant,
                       "budget_kind": st.budget_kind, "budget": st.budget})


def emit_csv(stats: Sequence[ExperimentStats], path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
            w.writeheader()
            for st in stats:
                w.writerow(st.as_row())
    except OSError as exc:
        raise OSError(f"cannot write results CSV {path}: {exc}") from exc


_INT_COLS = {"budget", "episodes", "first_plan_len"}
_FLOAT_COLS = {"success_pct", "avg_plan_len", "avg_decisions", "avg_expansions"}


def read_csv(path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        out = []
        for row in csv.DictReader(fh):
            for k in _INT_COLS:
                row[k] = int(row[k])
            for k in _FLOAT_COLS:
                row[k] = float(row[k])
            out.append(row)
        return out


# -- manifests -----------------------------------------------------------------

def _expand_problems(tokens, base: Path) -> tuple:
    out = []
    for tok in tokens:
        p = (base / tok) if not os.path.isabs(tok) else Path(tok)
        if p.is_dir():
            out.extend(sorted(q for q in p.glob("*.pddl") if "domain" not in q.name.lower()))
        else:
            out.append(p)
    return tuple(out)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ManifestError(f"not a boolean: {text!r}")


def spec_from_mapping(m: dict, base: Path, name: str = "") -> ExperimentSpec:
    try:
        if "domain" not in m:
            raise ManifestError(f"[{name}] needs a domain")
        if "problems" not in m:
            raise ManifestError(f"[{name}] needs problems")
        budgets = tuple(DecisionBudget.parse(b) for b in m.get("budgets", "exp:100").split())
        domain = Path(m["domain"])
        return ExperimentSpec(
            domain=domain if domain.is_absolute() else base / domain,
            problems=_expand_problems(m["problems"].split(), base),
            variants=tuple(m.get("variants", "base I J IJ").split()),
            budgets=budgets,
            episodes=int(m.get("episodes", 100)),
            max_actions=int(m.get("max_actions", 500)),
            seed=int(m.get("seed", 0)),
            heuristic=m.get("heuristic", "ff").strip(),
            learning=_bool(m.get("learning", "false")),
            name=name,
        )
    except ManifestError:
        raise
    except ValueError as exc:
        raise ManifestError(f"[{name}] {exc}") from exc


SPEC_KEYS = {"domain", "problems", "variants", "budgets", "episodes", "max_actions", "seed",
             "heuristic", "learning"}
RUN_KEYS = {"out", "workers"}


def _check_keys(text: str, path: Path) -> None:
    # a parser without a default section sees only the keys each section sets itself
    raw = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), default_section="\0")
    raw.read_string(text)
    for sec in raw.sections():
        keys = set(raw[sec])
        allowed = SPEC_KEYS | RUN_KEYS if sec == "DEFAULT" else SPEC_KEYS
        bad = sorted(keys - allowed)
        if bad:
            where = "only allowed in [DEFAULT]" if set(bad) <= RUN_KEYS else "unknown"
            raise ManifestError(f"{path}: [{sec}] key(s) {', '.join(bad)} {where}")


def load_manifest(path, overrides: Optional[dict] = None):
    """Read a manifest; returns ``(specs, settings)`` where settings holds the
    ``[DEFAULT]`` keys such as ``out`` and ``workers``."""
    path = Path(path)
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        cp.read_string(text, source=str(path))
        _check_keys(text, path)
    except (OSError, configparser.Error) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    base = path.parent
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    specs = []
    for sec in cp.sections():
        m = dict(cp[sec])
        m.update(overrides)
        specs.append(spec_from_mapping(m, base, sec))
    if not specs:
        raise ManifestError(f"manifest {path} defines no experiment sections")
    settings = dict(cp.defaults())
    settings.update({k: v for k, v in overrides.items() if k in ("out", "workers")})
    if "out" in settings and not os.path.isabs(settings["out"]) and "out" not in overrides:
        settings["out"] = str(base / settings["out"])
    return specs, settings


# -- plan validation -------------------------------------------------------------

@dataclass
class PlanVerdict:
    valid: bool
    steps: int
    failed_step: Optional[int] = None
    reason: str = ""


def parse_plan(text: str) -> list[tuple[int, str]]:
    """``(line_no, ground action name)`` for each plan line; ``;`` comments
    and blank lines are skipped."""
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        body = line.split(";", 1)[0].strip()
        if not body:
            continue
        expr = read_sexpr(body)
        if not expr or any(isinstance(x, list) for x in expr):
            raise UnknownAction(no, body)
        out.append((no, " ".join(expr)))
    return out


def check_plan(prob: GroundProblem, steps: Sequence[int]) -> PlanVerdict:
    s = prob.init
    for i, aid in enumerate(steps, 1):
        nxt = apply_action(s, prob.actions[aid])
        if nxt is None:
            missing = [prob.propositions[p] for p in prob.actions[aid].pre if not (s >> p) & 1]
            return PlanVerdict(False, len(steps), i,
                               f"{prob.actions[aid].name}: unsatisfied precondition(s) "
                               + ", ".join(f"({m})" for m in missing))
        s = nxt
    if not subset(prob.goal, s):
        missing = [prob.propositions[p] for p in range(prob.num_props) if (prob.goal >> p) & 1 and not (s >> p) & 1]
        return PlanVerdict(False, len(steps), None,
                           "goal not satisfied: " + ", ".join(f"({m})" for m in missing))
    return PlanVerdict(True, len(steps))


def validate_plan_file(domain_path, problem_path, plan_path) -> PlanVerdict:
    prob = ground(parse_domain_file(domain_path), parse_problem_file(problem_path), prune=False)
    with open(plan_path, encoding="utf-8") as fh:
        lines = parse_plan(fh.read())
    steps = []
    for no, name in lines:
        try:
            steps.append(prob.action_id(name))
        except KeyError:
            raise UnknownAction(no, f"({name})") from None
    return check_plan(prob, steps)


def format_plan(prob: GroundProblem, plan: Sequence[int]) -> str:
    return "".join(f"({prob.actions[a].name})\n" for a in plan)
