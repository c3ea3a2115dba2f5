"""Terms over a signature: evaluation, ranges, fragments, enumeration.

A term is a variable ``z1, z2, ...``, a constant symbol, or an application
of an operation symbol to child terms.  Canonical terms number their
variables by first occurrence, left to right, which makes term equality a
plain structural comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Union

from .algebra import Algebra, AlgebraError, Signature, VARIABLE_RE


@dataclass(frozen=True)
class Var:
    index: int  # z1 -> Var(1)


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...]


Term = Union[Var, Const, App]

GROUND = "ground"
MONOLINEAR = "monolinear"
LINEAR = "linear"
GENERAL = "general"
FRAGMENTS = (GROUND, MONOLINEAR, LINEAR, GENERAL)


class EnumerationCapError(AlgebraError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"term enumeration would exceed the cap of {cap} terms")


class TermError(AlgebraError):
    pass


def render_term(term: Term) -> str:
    if isinstance(term, Var):
        return f"z{term.index}"
    if isinstance(term, Const):
        return term.name
    return f"{term.op}({', '.join(render_term(a) for a in term.args)})"


_TOKEN_RE = re.compile(r"\s*([(),]|[^\s(),]+)")


def parse_term(text: str, signature: Signature | None = None) -> Term:
    """Parse surface syntax like ``f(g(z1))`` or ``m(z1, a)``.

    Names matching ``z[0-9]+`` are variables; everything else is an
    operation (when followed by parentheses) or a constant.  Arities are
    checked when a signature is supplied.
    """
    tokens = _TOKEN_RE.findall(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise TermError(f"unexpected end of term in {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_one() -> Term:
        tok = take()
        if tok in "(),":
            raise TermError(f"unexpected {tok!r} in {text!r}")
        if VARIABLE_RE.match(tok):
            return Var(int(tok[1:]))
        if peek() == "(":
            take()
            args = [parse_one()]
            while peek() == ",":
                take()
                args.append(parse_one())
            if take() != ")":
                raise TermError(f"expected ')' in {text!r}")
            if signature is not None and len(args) != signature.arity(tok):
                raise TermError(
                    f"{tok!r} applied to {len(args)} argument(s), "
                    f"arity is {signature.arity(tok)}"
                )
            return App(tok, tuple(args))
        if signature is not None and tok not in signature.constant_symbols:
            if tok in signature.op_symbols:
                raise TermError(f"operation {tok!r} used without arguments")
            raise TermError(f"unknown constant {tok!r}")
        return Const(tok)

    term = parse_one()
    if pos != len(tokens):
        raise TermError(f"trailing input after term in {text!r}")
    return term


def term_depth(term: Term) -> int:
    if isinstance(term, App):
        return 1 + max(term_depth(a) for a in term.args)
    return 0


def term_size(term: Term) -> int:
    if isinstance(term, App):
        return 1 + sum(term_size(a) for a in term.args)
    return 1


def term_variables(term: Term) -> list[int]:
    """Distinct variable indices in first-occurrence order."""
    out: list[int] = []

    def walk(t: Term):
        if isinstance(t, Var):
            if t.index not in out:
                out.append(t.index)
        elif isinstance(t, App):
            for a in t.args:
                walk(a)

    walk(term)
    return out


def variable_occurrences(term: Term) -> int:
    if isinstance(term, Var):
        return 1
    if isinstance(term, App):
        return sum(variable_occurrences(a) for a in term.args)
    return 0


def canonicalize(term: Term) -> Term:
    """Rename variables to z1, z2, ... in first-occurrence order."""
    mapping: dict[int, int] = {}

    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            if t.index not in mapping:
                mapping[t.index] = len(mapping) + 1
            return Var(mapping[t.index])
        if isinstance(t, App):
            return App(t.op, tuple(walk(a) for a in t.args))
        return t

    return walk(term)


def shift_variables(term: Term, offset: int) -> Term:
    if isinstance(term, Var):
        return Var(term.index + offset)
    if isinstance(term, App):
        return App(term.op, tuple(shift_variables(a, offset) for a in term.args))
    return term


def eval_term(term: Term, algebra: Algebra, assignment: Mapping[int, str]) -> str:
    """Bottom-up evaluation through the operation tables."""
    if isinstance(term, Var):
        if term.index not in assignment:
            raise TermError(f"unbound variable z{term.index}")
        return assignment[term.index]
    if isinstance(term, Const):
        if term.name not in algebra.carrier:
            raise TermError(f"unknown constant {term.name!r} in {algebra.name!r}")
        return term.name
    args = tuple(eval_term(a, algebra, assignment) for a in term.args)
    return algebra.apply(term.op, args)


def range_of_term(term: Term, algebra: Algebra) -> frozenset[str]:
    """All values of the term over every variable assignment.

    Ground terms yield a singleton.  This enumerates assignments directly
    and serves as the independent oracle for the symbolic engines.
    """
    variables = term_variables(term)
    if not variables:
        return frozenset({eval_term(term, algebra, {})})
    values = set()
    for combo in product(algebra.carrier, repeat=len(variables)):
        values.add(eval_term(term, algebra, dict(zip(variables, combo))))
        if len(values) == len(algebra.carrier):
            break
    return frozenset(values)


def range_of_set(terms: Iterable[Term], algebra: Algebra) -> frozenset[str]:
    """Intersection of per-term ranges; empty families are rejected."""
    terms = list(terms)
    if not terms:
        raise TermError("range of an empty term set is undefined")
    result = range_of_term(terms[0], algebra)
    for t in terms[1:]:
        result &= range_of_term(t, algebra)
    return result


def is_generalization(term: Term, algebra: Algebra, a: str) -> bool:
    algebra.require_element(a)
    return a in range_of_term(term, algebra)


def classify_fragment(term: Term) -> str:
    distinct = len(term_variables(term))
    occurrences = variable_occurrences(term)
    if distinct == 0:
        return GROUND
    if distinct == 1 and occurrences == 1:
        return MONOLINEAR
    if occurrences == distinct:
        return LINEAR
    return GENERAL


def fragment_admits(fragment: str, term: Term) -> bool:
    """Inclusive filter: each fragment admits all strictly simpler ones."""
    if fragment not in FRAGMENTS:
        raise TermError(f"unknown fragment {fragment!r}")
    return FRAGMENTS.index(classify_fragment(term)) <= FRAGMENTS.index(fragment)


def render_g_formula(term: Term) -> str:
    """First-order reading of a term: existentially close its variables."""
    variables = term_variables(term)
    body = f"y = {render_term(term)}"
    if not variables:
        return body
    return "exists " + " ".join(f"z{i}" for i in variables) + " . " + body


def _symbol_ranks(signature: Signature) -> tuple[dict[str, int], dict[str, int]]:
    op_rank = {sym: i for i, (sym, _) in enumerate(signature.operations)}
    const_rank = {c: i for i, c in enumerate(signature.constant_symbols)}
    return op_rank, const_rank


def enumeration_key(term: Term, signature: Signature):
    """Deterministic enumeration order: depth, size, then spelling with
    variables ordered before constants."""
    op_rank, const_rank = _symbol_ranks(signature)
    spelling: list[tuple[int, int]] = []

    def walk(t: Term):
        if isinstance(t, Var):
            spelling.append((0, t.index))
        elif isinstance(t, Const):
            spelling.append((2, const_rank.get(t.name, len(const_rank))))
        else:
            spelling.append((1, op_rank.get(t.op, len(op_rank))))
            for a in t.args:
                walk(a)

    walk(term)
    return (term_depth(term), term_size(term), tuple(spelling))


def witness_key(term: Term, signature: Signature):
    """Witness tie-break order: depth, size, then spelling with variables
    ordered last.  Used to pick minimal certificate terms."""
    op_rank, const_rank = _symbol_ranks(signature)
    spelling: list[tuple[int, int]] = []

    def walk(t: Term):
        if isinstance(t, Var):
            spelling.append((2, t.index))
        elif isinstance(t, Const):
            spelling.append((1, const_rank.get(t.name, len(const_rank))))
        else:
            spelling.append((0, op_rank.get(t.op, len(op_rank))))
            for a in t.args:
                walk(a)

    walk(term)
    return (term_depth(term), term_size(term), tuple(spelling))


def _shapes(
    signature: Signature, max_depth: int, max_size: int | None
) -> list[Term]:
    """Operation-labelled tree shapes with a placeholder Var(0) at leaves."""
    leaf = Var(0)
    by_depth: list[list[Term]] = [[leaf]]
    for d in range(1, max_depth + 1):
        level: list[Term] = []
        shallower = [s for lvl in by_depth for s in lvl]
        for sym, arity in signature.operations:
            for args in product(shallower, repeat=arity):
                if max(term_depth(a) for a in args) != d - 1:
                    continue
                shape = App(sym, args)
                if max_size is not None and term_size(shape) > max_size:
                    continue
                level.append(shape)
        by_depth.append(level)
    return [s for lvl in by_depth for s in lvl]


def _label_leaves(
    shape: Term,
    signature: Signature,
    max_vars: int,
    fragment: str,
) -> Iterator[Term]:
    """Fill the leaves of a shape with constants and canonical variables.

    For the linear and monolinear fragments, variables are never reused, so
    each output is canonical by construction; for the general fragment a
    leaf may reuse any variable introduced so far.
    """
    leaves: list[None] = []

    def count(t: Term):
        if isinstance(t, Var):
            leaves.append(None)
        elif isinstance(t, App):
            for a in t.args:
                count(a)

    count(shape)
    n_leaves = len(leaves)
    reuse = fragment == GENERAL
    consts = signature.constant_symbols

    def assignments(i: int, used: int) -> Iterator[tuple[tuple[Term, ...], int]]:
        if i == n_leaves:
            yield (), used
            return
        choices: list[Term] = []
        if used < max_vars:
            choices.append(Var(used + 1))
        if reuse:
            choices.extend(Var(j) for j in range(1, used + 1))
        choices.extend(Const(c) for c in consts)
        for choice in choices:
            new_used = used + 1 if isinstance(choice, Var) and choice.index > used else used
            for rest, final in assignments(i + 1, new_used):
                yield (choice,) + rest, final

    def rebuild(t: Term, fill: Iterator[Term]) -> Term:
        if isinstance(t, Var):
            return next(fill)
        if isinstance(t, App):
            return App(t.op, tuple(rebuild(a, fill) for a in t.args))
        return t

    for combo, _ in assignments(0, 0):
        yield rebuild(shape, iter(combo))


def enumerate_terms(
    signature: Signature,
    max_depth: int,
    max_vars: int,
    fragment: str = GENERAL,
    cap: int = 1_000_000,
    max_size: int | None = None,
) -> list[Term]:
    """All canonical terms within the bounds, in deterministic order.

    Order is depth, then size, then spelling (variables before constants,
    operation symbols by declaration order).  Raises EnumerationCapError
    rather than producing more than ``cap`` terms.  ``max_size`` optionally
    bounds the node count on top of the depth bound.
    """
    if max_depth < 0:
        raise TermError("max_depth must be >= 0")
    if max_vars < 1:
        raise TermError("max_vars must be >= 1")
    if fragment not in FRAGMENTS:
        raise TermError(f"unknown fragment {fragment!r}")
    out: list[Term] = []
    for shape in _shapes(signature, max_depth, max_size):
        for term in _label_leaves(shape, signature, max_vars, fragment):
            if not fragment_admits(fragment, term):
                continue
            out.append(term)
            if len(out) > cap:
                raise EnumerationCapError(cap)
    out.sort(key=lambda t: enumeration_key(t, signature))
    return out
