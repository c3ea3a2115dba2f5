"""Monolinear fragment: the clone of unary polynomial functions.

A monolinear term has exactly one occurrence of a single variable; its
other argument positions are filled with ground terms over the
distinguished constants.  Each such term induces a unary function on the
carrier, and the set of those functions is the least set containing the
identity and closed under plugging into any operation position with
ground-denotable values in the remaining positions.

Sharing across an algebra pair is term-level, not table-level, so the pair
engine saturates pairs of simultaneously realizable tables, mirroring the
linear engine's profile pairs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product

from .algebra import Algebra, AlgebraPair
from .terms import App, Const, Term, Var, render_term, witness_key
from .verdict import (
    Certificate,
    DOMINATING_ELEMENT,
    MONOLINEAR_FRAGMENT,
    Verdict,
)


@dataclass(frozen=True)
class UnaryPolynomial:
    table: tuple[str, ...]  # indexed by carrier order
    witness: Term


@dataclass(frozen=True)
class PairedPolynomial:
    left: tuple[str, ...]
    right: tuple[str, ...]
    witness: Term


def ground_value_terms(algebra: Algebra) -> list[tuple[str, Term]]:
    """Values of ground terms over the distinguished constants, each with a
    minimal ground witness; this is the subalgebra the constants generate."""
    sig = algebra.signature
    heap: list = []
    counter = 0

    def push(term: Term, value: str):
        nonlocal counter
        heapq.heappush(heap, (witness_key(term, sig), counter, term, value))
        counter += 1

    for c in sig.constant_symbols:
        push(Const(c), c)

    accepted: dict[str, Term] = {}
    order: list[tuple[str, Term]] = []
    while heap:
        _, _, term, value = heapq.heappop(heap)
        if value in accepted:
            continue
        accepted[value] = term
        order.append((value, term))
        for sym, arity in sig.operations:
            for combo in product(order, repeat=arity):
                if not any(v == value for v, _ in combo):
                    continue
                args = tuple(t for _, t in combo)
                out = algebra.apply(sym, tuple(v for v, _ in combo))
                push(App(sym, args), out)
    return order


def paired_ground_values(pair: AlgebraPair) -> list[tuple[str, str, Term]]:
    """Simultaneously realizable ground values over the pair."""
    sig = pair.left.signature
    heap: list = []
    counter = 0

    def push(term: Term, lv: str, rv: str):
        nonlocal counter
        heapq.heappush(heap, (witness_key(term, sig), counter, term, lv, rv))
        counter += 1

    for c in sig.constant_symbols:
        push(Const(c), c, c)

    accepted: dict[tuple[str, str], Term] = {}
    order: list[tuple[str, str, Term]] = []
    while heap:
        _, _, term, lv, rv = heapq.heappop(heap)
        if (lv, rv) in accepted:
            continue
        accepted[(lv, rv)] = term
        order.append((lv, rv, term))
        for sym, arity in sig.operations:
            for combo in product(order, repeat=arity):
                if not any(l == lv and r == rv and t == term for l, r, t in combo):
                    continue
                args = tuple(t for _, _, t in combo)
                out_l = pair.left.apply(sym, tuple(l for l, _, _ in combo))
                out_r = pair.right.apply(sym, tuple(r for _, r, _ in combo))
                push(App(sym, args), out_l, out_r)
    return order


def polynomial_clone(algebra: Algebra) -> list[UnaryPolynomial]:
    """All unary functions induced by monolinear terms, minimal witnesses."""
    sig = algebra.signature
    carrier = algebra.carrier
    grounds = ground_value_terms(algebra)

    heap: list = []
    counter = 0

    def push(term: Term, table: tuple[str, ...]):
        nonlocal counter
        heapq.heappush(heap, (witness_key(term, sig), counter, term, table))
        counter += 1

    push(Var(1), carrier)

    accepted: dict[tuple[str, ...], UnaryPolynomial] = {}
    order: list[UnaryPolynomial] = []
    while heap:
        _, _, term, table = heapq.heappop(heap)
        if table in accepted:
            continue
        poly = UnaryPolynomial(table, term)
        accepted[table] = poly
        order.append(poly)
        for sym, arity in sig.operations:
            for position in range(arity):
                filler_slots = arity - 1
                for fillers in product(grounds, repeat=filler_slots):
                    args: list[Term] = []
                    fill_iter = iter(fillers)
                    new_table = []
                    filler_values = [v for v, _ in fillers]
                    for x in table:
                        row = filler_values[:position] + [x] + filler_values[position:]
                        new_table.append(algebra.apply(sym, tuple(row)))
                    for i in range(arity):
                        if i == position:
                            args.append(term)
                        else:
                            args.append(next(fill_iter)[1])
                    push(App(sym, tuple(args)), tuple(new_table))
    return order


def paired_clone(pair: AlgebraPair) -> list[PairedPolynomial]:
    """Pairs of unary tables realizable by one shared monolinear term."""
    sig = pair.left.signature
    grounds = paired_ground_values(pair)

    heap: list = []
    counter = 0

    def push(term: Term, left: tuple[str, ...], right: tuple[str, ...]):
        nonlocal counter
        heapq.heappush(heap, (witness_key(term, sig), counter, term, left, right))
        counter += 1

    push(Var(1), pair.left.carrier, pair.right.carrier)

    accepted: dict[tuple[tuple[str, ...], tuple[str, ...]], PairedPolynomial] = {}
    order: list[PairedPolynomial] = []
    while heap:
        _, _, term, left, right = heapq.heappop(heap)
        if (left, right) in accepted:
            continue
        poly = PairedPolynomial(left, right, term)
        accepted[(left, right)] = poly
        order.append(poly)
        for sym, arity in sig.operations:
            for position in range(arity):
                for fillers in product(grounds, repeat=arity - 1):
                    lv = [f[0] for f in fillers]
                    rv = [f[1] for f in fillers]
                    new_left = tuple(
                        pair.left.apply(sym, tuple(lv[:position] + [x] + lv[position:]))
                        for x in left
                    )
                    new_right = tuple(
                        pair.right.apply(sym, tuple(rv[:position] + [x] + rv[position:]))
                        for x in right
                    )
                    args = [f[2] for f in fillers]
                    args.insert(position, term)
                    push(App(sym, tuple(args)), new_left, new_right)
    return order


def m_gen_signature(algebra: Algebra, a: str, clone=None) -> list[UnaryPolynomial]:
    """The polynomials whose range contains ``a``: the semantic quotient of
    the monolinear generalizations of ``a``."""
    algebra.require_element(a)
    if clone is None:
        clone = polynomial_clone(algebra)
    return [p for p in clone if a in p.table]


def m_subset(
    clone_pairs: list[PairedPolynomial], pair: AlgebraPair, a: str, b: str, b_prime: str
) -> tuple[bool, Term | None]:
    """Decide m-Gen(a,b) subset-of m-Gen(a,b') over the paired clone."""
    pair.left.require_element(a)
    pair.right.require_element(b)
    pair.right.require_element(b_prime)
    for p in clone_pairs:
        if a in p.left and b in p.right and b_prime not in p.right:
            return False, p.witness
    return True, None


def m_decide_leq(
    pair: AlgebraPair, a: str, b: str, clone_pairs: list[PairedPolynomial] | None = None
) -> Verdict:
    """Maximality of the shared monolinear generalizations of (a, b).

    Fails iff some admissible competitor b' realizes a strict superset; the
    competitor b' = a is excluded when a names an element of the right
    carrier.
    """
    pair.left.require_element(a)
    pair.right.require_element(b)
    if clone_pairs is None:
        clone_pairs = paired_clone(pair)
    a_in_right = a in pair.right.carrier
    for b_prime in pair.right.carrier:
        if b_prime == b or (a_in_right and b_prime == a):
            continue
        forward, _ = m_subset(clone_pairs, pair, a, b, b_prime)
        if not forward:
            continue
        backward, evidence = m_subset(clone_pairs, pair, a, b_prime, b)
        if not backward:
            return Verdict(
                False,
                Certificate(DOMINATING_ELEMENT, element=b_prime, term=evidence),
                MONOLINEAR_FRAGMENT,
            )
    return Verdict(True, None, MONOLINEAR_FRAGMENT)


def dump_clone(clone: list[UnaryPolynomial], algebra: Algebra) -> str:
    """Clone report, one line per polynomial."""
    lines = []
    for p in clone:
        mapping = ", ".join(f"{x}->{y}" for x, y in zip(algebra.carrier, p.table))
        lines.append(f"[{mapping}]  witness: {render_term(p.witness)}")
    return "\n".join(lines) + "\n"
