"""Parser and printer for the STRIPS + typing subset of PDDL.

Grammar (identifiers are case-insensitive and lower-cased; ``;`` starts a
comment running to the end of the line)::

    domain   ::= (define (domain NAME) [(:requirements REQ*)] [(:types TYPED*)]
                  [(:constants TYPED*)] [(:predicates (PRED TYPED_VARS)*)] action*)
    action   ::= (:action NAME [:parameters (TYPED_VARS)]
                  [:precondition COND] [:effect EFFECT])
    COND     ::= () | ATOM | (and ATOM*)
    EFFECT   ::= () | LIT | (and LIT*)
    LIT      ::= ATOM | (not ATOM)
    problem  ::= (define (problem NAME) (:domain NAME) [(:requirements REQ*)]
                  [(:objects TYPED*)] (:init ATOM*) (:goal COND))
    TYPED    ::= NAME* [- TYPE] ...      (untyped names default to ``object``)

REQ may only be ``:strips`` or ``:typing``.  Any other construct raises
:class:`UnsupportedFeature` naming it; nothing is silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

ROOT_TYPE = "object"
SUPPORTED_REQUIREMENTS = (":strips", ":typing")
UNSUPPORTED_KEYWORDS = {
    "or", "forall", "exists", "when", "imply", "either", "=", "increase", "decrease",
    "assign", "scale-up", "scale-down", "preference",
}


class PDDLError(Exception):
    pass


class PDDLSyntaxError(PDDLError):
    def __init__(self, message, line=None, col=None, token=None):
        self.line, self.col, self.token = line, col, token
        where = f" at line {line}, column {col}" if line is not None else ""
        near = f" near {token!r}" if token is not None else ""
        super().__init__(f"{message}{where}{near}")


class UnsupportedFeature(PDDLError):
    def __init__(self, construct: str, line=None):
        self.construct = construct
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unsupported PDDL construct: {construct}{where}")


class GroundingError(PDDLError):
    """A name (type, predicate, object, variable, domain) does not resolve."""


# -- s-expressions -----------------------------------------------------------

class Sym(str):
    __slots__ = ("line", "col")


class SList(list):
    line = None
    col = None


def tokenize(text: str) -> Iterator[tuple[str, int, int]]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, col
            i += 1
            col += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            yield text[i:j].lower(), line, col
            col += j - i
            i = j


def read_sexpr(text: str) -> SList:
    stack: list[SList] = []
    result = None
    last = (1, 1)
    for tok, line, col in tokenize(text):
        last = (line, col)
        if result is not None:
            raise PDDLSyntaxError("trailing input after top-level expression", line, col, tok)
        if tok == "(":
            lst = SList()
            lst.line, lst.col = line, col
            stack.append(lst)
        elif tok == ")":
            if not stack:
                raise PDDLSyntaxError("unbalanced ')'", line, col, tok)
            lst = stack.pop()
            if stack:
                stack[-1].append(lst)
            else:
                result = lst
        else:
            if not stack:
                raise PDDLSyntaxError("expected '('", line, col, tok)
            sym = Sym(tok)
            sym.line, sym.col = line, col
            stack[-1].append(sym)
    if stack:
        raise PDDLSyntaxError("unexpected end of input: missing ')'", *last)
    if result is None:
        raise PDDLSyntaxError("empty input")
    return result


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __str__(self):
        return "(" + " ".join((self.predicate,) + self.args) + ")"

    @property
    def ground_name(self) -> str:
        return " ".join((self.predicate,) + self.args)


@dataclass(frozen=True)
class ActionSchema:
    name: str
    parameters: tuple = ()          # ((var, type), ...)
    precondition: tuple = ()        # (Atom, ...)
    add_effects: tuple = ()
    del_effects: tuple = ()


@dataclass(frozen=True)
class DomainAst:
    name: str
    requirements: tuple = ()
    types: dict = field(default_factory=dict)        # name -> parent
    constants: tuple = ()                            # ((name, type), ...)
    predicates: dict = field(default_factory=dict)   # name -> ((var, type), ...)
    actions: tuple = ()

    def is_subtype(self, t: str, ancestor: str) -> bool:
        seen = set()
        while t not in seen:
            if t == ancestor:
                return True
            seen.add(t)
            t = self.types.get(t, ROOT_TYPE)
        return False


@dataclass(frozen=True)
class ProblemAst:
    name: str
    domain_name: str
    requirements: tuple = ()
    objects: tuple = ()      # ((name, type), ...)
    init: tuple = ()         # (Atom, ...)
    goal: tuple = ()         # (Atom, ...)


# -- parsing -------------------------------------------------------------------

def _err(msg, node):
    return PDDLSyntaxError(msg, getattr(node, "line", None), getattr(node, "col", None),
                           node if isinstance(node, str) else None)


def _expect_list(node, what):
    if not isinstance(node, list):
        raise _err(f"expected {what}", node)
    return node


def _expect_name(node, what):
    if not isinstance(node, str) or node.startswith((":", "(")):
        raise _err(f"expected {what}", node)
    return str(node)


def _typed_list(items, variables: bool) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        tok = items[i]
        if isinstance(tok, list):
            if tok and tok[0] == "either":
                raise UnsupportedFeature("either", tok.line)
            raise _err("unexpected list in typed list", tok)
        if tok == "-":
            if i + 1 >= len(items):
                raise _err("missing type after '-'", tok)
            t = items[i + 1]
            if isinstance(t, list):
                if t and t[0] == "either":
                    raise UnsupportedFeature("either", t.line)
                raise _err("expected type name", t)
            if not pending:
                raise _err("'-' without preceding names", tok)
            out.extend((p, str(t)) for p in pending)
            pending = []
            i += 2
            continue
        if variables != tok.startswith("?"):
            raise _err("expected variable" if variables else "expected name", tok)
        pending.append(str(tok))
        i += 1
    out.extend((p, ROOT_TYPE) for p in pending)
    return out


def _requirements(items):
    reqs = []
    for r in items:
        if not isinstance(r, str) or not r.startswith(":"):
            raise _err("expected requirement flag", r)
        if r not in SUPPORTED_REQUIREMENTS:
            raise UnsupportedFeature(f":requirements {r}", r.line)
        reqs.append(str(r))
    return tuple(reqs)


def _atom(node) -> Atom:
    lst = _expect_list(node, "atom")
    if not lst:
        raise _err("empty atom", node)
    head = lst[0]
    if isinstance(head, list):
        raise _err("expected predicate name", head)
    if head in UNSUPPORTED_KEYWORDS or head in ("and", "not"):
        raise UnsupportedFeature(str(head), lst.line)
    for a in lst[1:]:
        if isinstance(a, list):
            raise UnsupportedFeature("nested term (function symbols)", a.line)
    return Atom(str(head), tuple(str(a) for a in lst[1:]))


def _conjunction(node, where) -> tuple:
    """Positive conjunction: (), ATOM, or (and ATOM*)."""
    lst = _expect_list(node, where)
    if not lst:
        return ()
    head = lst[0]
    if head == "and":
        return tuple(_positive(c, where) for c in lst[1:])
    return (_positive(lst, where),)


def _positive(node, where) -> Atom:
    lst = _expect_list(node, where)
    if lst and lst[0] == "not":
        raise UnsupportedFeature(f"negative literal in {where}", lst.line)
    if lst and lst[0] == "and":
        raise UnsupportedFeature(f"nested 'and' in {where}", lst.line)
    return _atom(lst)


def _effect(node) -> tuple[tuple, tuple]:
    lst = _expect_list(node, "effect")
    if not lst:
        return (), ()
    lits = lst[1:] if lst[0] == "and" else [lst]
    adds, dels = [], []
    for lit in lits:
        lit = _expect_list(lit, "effect literal")
        if lit and lit[0] == "not":
            if len(lit) != 2:
                raise _err("'not' takes exactly one atom", lit)
            dels.append(_positive(lit[1], "effect"))
        elif lit and lit[0] == "and":
            raise UnsupportedFeature("nested 'and' in effect", lit.line)
        else:
            adds.append(_atom(lit))
    return tuple(adds), tuple(dels)


def _action(items) -> ActionSchema:
    if len(items) < 2:
        raise _err("action needs a name", items)
    name = _expect_name(items[1], "action name")
    params: list = []
    pre: tuple = ()
    adds: tuple = ()
    dels: tuple = ()
    i = 2
    while i < len(items):
        key = items[i]
        if i + 1 >= len(items):
            raise _err("missing value for action field", key)
        val = items[i + 1]
        if key == ":parameters":
            params = _typed_list(_expect_list(val, "parameter list"), variables=True)
        elif key == ":precondition":
            pre = _conjunction(val, "precondition")
        elif key == ":effect":
            adds, dels = _effect(val)
        elif isinstance(key, str) and key.startswith(":"):
            raise UnsupportedFeature(f"action field {key}", key.line)
        else:
            raise _err("expected action field keyword", key)
        i += 2
    return ActionSchema(name, tuple(params), pre, adds, dels)


def _check_atom(dom: DomainAst, atom: Atom, scope: dict | None, where: str):
    sig = dom.predicates.get(atom.predicate)
    if sig is None:
        raise GroundingError(f"undeclared predicate {atom.predicate!r} in {where}")
    if len(sig) != len(atom.args):
        raise GroundingError(
            f"predicate {atom.predicate!r} has arity {len(sig)}, used with {len(atom.args)} in {where}")
    if scope is None:
        return
    consts = dict(dom.constants)
    for arg in atom.args:
        if arg.startswith("?"):
            if arg not in scope:
                raise GroundingError(f"unbound variable {arg} in {where}")
        elif arg not in consts:
            raise GroundingError(f"undeclared constant {arg!r} in {where}")


def _check_type(dom: DomainAst, t: str, where: str):
    if t != ROOT_TYPE and t not in dom.types:
        raise GroundingError(f"undeclared type {t!r} in {where}")


def parse_domain(text: str) -> DomainAst:
    tree = read_sexpr(text)
    if not tree or tree[0] != "define":
        raise _err("expected (define ...)", tree[0] if tree else tree)
    header = _expect_list(tree[1] if len(tree) > 1 else None, "(domain NAME)")
    if len(header) != 2 or header[0] != "domain":
        raise _err("expected (domain NAME)", header)
    name = _expect_name(header[1], "domain name")
    reqs: tuple = ()
    types: dict = {}
    constants: list = []
    preds: dict = {}
    actions: list = []
    for sec in tree[2:]:
        sec = _expect_list(sec, "domain section")
        if not sec:
            raise _err("empty domain section", sec)
        key = sec[0]
        if key == ":requirements":
            reqs = _requirements(sec[1:])
        elif key == ":types":
            for t, parent in _typed_list(sec[1:], variables=False):
                if t == ROOT_TYPE:
                    continue
                types[t] = parent
        elif key == ":constants":
            constants.extend(_typed_list(sec[1:], variables=False))
        elif key == ":predicates":
            for p in sec[1:]:
                p = _expect_list(p, "predicate declaration")
                if not p:
                    raise _err("empty predicate declaration", p)
                preds[_expect_name(p[0], "predicate name")] = tuple(_typed_list(p[1:], variables=True))
        elif key == ":action":
            actions.append(_action(sec))
        elif isinstance(key, str) and key.startswith(":"):
            raise UnsupportedFeature(str(key), sec.line)
        else:
            raise _err("expected domain section keyword", key)
    for parent in list(types.values()):
        if parent != ROOT_TYPE and parent not in types:
            types[parent] = ROOT_TYPE
    dom = DomainAst(name, reqs, types, tuple(constants), preds, tuple(actions))
    for t, parent in types.items():
        _check_type(dom, parent, f"type {t}")
    for c, t in constants:
        _check_type(dom, t, f"constant {c}")
    for pname, sig in preds.items():
        for _, t in sig:
            _check_type(dom, t, f"predicate {pname}")
    for act in actions:
        scope = dict(act.parameters)
        if len(scope) != len(act.parameters):
            raise GroundingError(f"duplicate parameter in action {act.name!r}")
        for _, t in act.parameters:
            _check_type(dom, t, f"action {act.name}")
        for atom in act.precondition + act.add_effects + act.del_effects:
            _check_atom(dom, atom, scope, f"action {act.name}")
    return dom


def parse_problem(text: str) -> ProblemAst:
    tree = read_sexpr(text)
    if not tree or tree[0] != "define":
        raise _err("expected (define ...)", tree[0] if tree else tree)
    header = _expect_list(tree[1] if len(tree) > 1 else None, "(problem NAME)")
    if len(header) != 2 or header[0] != "problem":
        raise _err("expected (problem NAME)", header)
    name = _expect_name(header[1], "problem name")
    domain_name = None
    reqs: tuple = ()
    objects: list = []
    init = None
    goal = None
    for sec in tree[2:]:
        sec = _expect_list(sec, "problem section")
        if not sec:
            raise _err("empty problem section", sec)
        key = sec[0]
        if key == ":domain":
            if len(sec) != 2:
                raise _err("expected (:domain NAME)", sec)
            domain_name = _expect_name(sec[1], "domain name")
        elif key == ":requirements":
            reqs = _requirements(sec[1:])
        elif key == ":objects":
            objects.extend(_typed_list(sec[1:], variables=False))
        elif key == ":init":
            init = tuple(_init_atom(a) for a in sec[1:])
        elif key == ":goal":
            if len(sec) != 2:
                raise _err("expected (:goal CONDITION)", sec)
            goal = _conjunction(sec[1], "goal")
        elif isinstance(key, str) and key.startswith(":"):
            raise UnsupportedFeature(str(key), sec.line)
        else:
            raise _err("expected problem section keyword", key)
    if domain_name is None:
        raise PDDLSyntaxError("problem lacks (:domain NAME)")
    if init is None:
        raise PDDLSyntaxError("problem lacks (:init ...)")
    if goal is None:
        raise PDDLSyntaxError("problem lacks (:goal ...)")
    for atom in init + goal:
        for a in atom.args:
            if a.startswith("?"):
                raise _err("variable in ground atom", a)
    return ProblemAst(name, domain_name, reqs, tuple(objects), init, goal)


def _init_atom(node) -> Atom:
    lst = _expect_list(node, "init atom")
    if lst and lst[0] == "not":
        raise UnsupportedFeature("negative literal in init", lst.line)
    return _atom(lst)


# -- printing --------------------------------------------------------------------

def _typed(pairs) -> str:
    chunks = []
    for name, t in pairs:
        chunks.append(f"{name} - {t}")
    return " ".join(chunks)


def _cond(atoms) -> str:
    if not atoms:
        return "()"
    return "(and " + " ".join(str(a) for a in atoms) + ")"


def domain_to_pddl(d: DomainAst) -> str:
    lines = [f"(define (domain {d.name})"]
    if d.requirements:
        lines.append("  (:requirements " + " ".join(d.requirements) + ")")
    if d.types:
        lines.append("  (:types " + _typed(d.types.items()) + ")")
    if d.constants:
        lines.append("  (:constants " + _typed(d.constants) + ")")
    if d.predicates:
        lines.append("  (:predicates")
        for p, sig in d.predicates.items():
            lines.append(f"    ({p}{' ' + _typed(sig) if sig else ''})")
        lines.append("  )")
    for a in d.actions:
        lines.append(f"  (:action {a.name}")
        lines.append(f"    :parameters ({_typed(a.parameters)})")
        lines.append(f"    :precondition {_cond(a.precondition)}")
        lits = [str(x) for x in a.add_effects] + [f"(not {x})" for x in a.del_effects]
        lines.append("    :effect " + ("(and " + " ".join(lits) + ")" if lits else "()"))
        lines.append("  )")
    lines.append(")")
    return "\n".join(lines) + "\n"


def problem_to_pddl(p: ProblemAst) -> str:
    lines = [f"(define (problem {p.name})", f"  (:domain {p.domain_name})"]
    if p.requirements:
        lines.append("  (:requirements " + " ".join(p.requirements) + ")")
    if p.objects:
        lines.append("  (:objects " + _typed(p.objects) + ")")
    lines.append("  (:init " + " ".join(str(a) for a in p.init) + ")")
    lines.append(f"  (:goal {_cond(p.goal)})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def parse_domain_file(path) -> DomainAst:
    with open(path, encoding="utf-8") as fh:
        return parse_domain(fh.read())


def parse_problem_file(path) -> ProblemAst:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())
