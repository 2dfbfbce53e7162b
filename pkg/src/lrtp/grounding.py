"""Instantiate a parsed STRIPS domain/problem pair into a GroundProblem."""

from __future__ import annotations

import logging
from typing import Iterable

from .heuristics import build_rpg
from .pddl import (ROOT_TYPE, Atom, DomainAst, GroundingError, ProblemAst,
                   parse_domain_file, parse_problem_file)
from .strips import Action, GroundProblem, to_state

log = logging.getLogger(__name__)


def _objects(d: DomainAst, p: ProblemAst) -> dict[str, str]:
    objs: dict[str, str] = {}
    for name, t in tuple(d.constants) + tuple(p.objects):
        if t != ROOT_TYPE and t not in d.types:
            raise GroundingError(f"object {name!r} has undeclared type {t!r}")
        if name in objs and objs[name] != t:
            raise GroundingError(f"object {name!r} declared with types {objs[name]!r} and {t!r}")
        objs[name] = t
    return objs


def _check_ground_atom(d: DomainAst, objs: dict, atom: Atom, where: str):
    sig = d.predicates.get(atom.predicate)
    if sig is None:
        raise GroundingError(f"undeclared predicate {atom.predicate!r} in {where}")
    if len(sig) != len(atom.args):
        raise GroundingError(f"predicate {atom.predicate!r} expects {len(sig)} arguments in {where}")
    for a in atom.args:
        if a not in objs:
            raise GroundingError(f"undeclared object {a!r} in {where}")


def _bindings(schema, candidates, static_checks):
    """Backtracking over parameters; static preconditions are tested as soon
    as all their variables are bound."""
    params = [v for v, _ in schema.parameters]
    n = len(params)
    binding: dict[str, str] = {}

    def rec(k):
        if k == n:
            yield tuple(binding[v] for v in params)
            return
        var = params[k]
        for obj in candidates[k]:
            binding[var] = obj
            if all(check(binding) for check in static_checks[k]):
                yield from rec(k + 1)
        binding.pop(var, None)

    yield from rec(0)


def _instantiate(atom: Atom, binding: dict) -> str:
    return " ".join((atom.predicate,) + tuple(binding.get(a, a) for a in atom.args))


def ground_schemas(d: DomainAst, p: ProblemAst):
    """Yield (name, pre, add, delete) as sets of ground atom names."""
    objs = _objects(d, p)
    fluent = {a.predicate for s in d.actions for a in s.add_effects + s.del_effects}
    static_facts = {a.ground_name for a in p.init if a.predicate not in fluent}
    seen_names = set()
    for schema in d.actions:
        if schema.name in seen_names:
            raise GroundingError(f"duplicate action schema {schema.name!r}")
        seen_names.add(schema.name)
        order = {v: i for i, (v, _) in enumerate(schema.parameters)}
        candidates = [[o for o, ot in objs.items() if d.is_subtype(ot, t)]
                      for _, t in schema.parameters]
        static_checks: list[list] = [[] for _ in range(max(1, len(order)))]
        ground_static = []
        for atom in schema.precondition:
            if atom.predicate in fluent:
                continue
            vars_ = [order[a] for a in atom.args if a in order]
            if not vars_:
                ground_static.append(atom)
                continue
            static_checks[max(vars_)].append(
                lambda b, atom=atom: _instantiate(atom, b) in static_facts)
        if any(a.ground_name not in static_facts for a in ground_static):
            continue
        for args in _bindings(schema, candidates, static_checks):
            b = dict(zip(order, args))
            name = " ".join((schema.name,) + args)
            pre = {_instantiate(a, b) for a in schema.precondition}
            add = {_instantiate(a, b) for a in schema.add_effects}
            dele = {_instantiate(a, b) for a in schema.del_effects}
            yield name, pre, add, dele


def _intern(names: Iterable[str]) -> dict[str, int]:
    return {n: i for i, n in enumerate(sorted(set(names)))}


def _build(ground, init_names, goal_names, name, domain_name) -> GroundProblem:
    table = set(init_names) | set(goal_names)
    for _, pre, add, dele in ground:
        table |= pre | add | dele
    ids = _intern(table)
    actions = tuple(
        Action(i, n, {ids[x] for x in pre}, {ids[x] for x in add}, {ids[x] for x in dele})
        for i, (n, pre, add, dele) in enumerate(ground))
    props = tuple(sorted(ids, key=ids.get))
    return GroundProblem(props, actions, to_state(ids[x] for x in init_names),
                         to_state(ids[x] for x in goal_names), name, domain_name)


def ground(d: DomainAst, p: ProblemAst, prune: bool = True) -> GroundProblem:
    """Ground every schema over type-compatible objects.

    Atoms in both the add and delete list of a ground action are kept in
    the add list only. With ``prune`` (default) actions that never become
    applicable under the delete relaxation from the initial state are removed.
    """
    if p.domain_name != d.name:
        raise GroundingError(f"problem is for domain {p.domain_name!r}, not {d.name!r}")
    objs = _objects(d, p)
    for atom in p.init:
        _check_ground_atom(d, objs, atom, "init")
    for atom in p.goal:
        _check_ground_atom(d, objs, atom, "goal")
    raw = []
    conflicts = 0
    for name, pre, add, dele in ground_schemas(d, p):
        both = add & dele
        if both:
            conflicts += 1
            dele = dele - both
        raw.append((name, pre, add, dele))
    if conflicts:
        log.warning("%s: %d ground actions add and delete the same atom; add wins", p.name, conflicts)
    init_names = [a.ground_name for a in p.init]
    goal_names = [a.ground_name for a in p.goal]
    prob = _build(raw, init_names, goal_names, p.name, d.name)
    if not prune:
        return prob
    rpg = build_rpg(prob.actions, prob.init)
    kept = [raw[i] for i in sorted(rpg.act_level)]
    return _build(kept, init_names, goal_names, p.name, d.name)


def load_problem(domain_path, problem_path, prune: bool = True) -> GroundProblem:
    return ground(parse_domain_file(domain_path), parse_problem_file(problem_path), prune=prune)
