"""Linear-fragment engine: reachable simultaneous range-set pairs.

Every linear term (no repeated variables) has a range computable by
set-lifted bottom-up evaluation, so the ranges of all linear terms over a
pair of algebras are exactly the least family of subset pairs closed under
the lifted operations.  The family is finite (it lives in 2^A x 2^B), and
each pair keeps a minimal witness term.  For unary signatures every term is
linear, so this engine is exact for the full term language there.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product

from .algebra import Algebra, AlgebraPair
from .terms import (
    App,
    Const,
    Term,
    Var,
    canonicalize,
    render_term,
    shift_variables,
    term_variables,
    witness_key,
)


@dataclass(frozen=True)
class LinearProfile:
    left: frozenset[str]
    right: frozenset[str]
    witness: Term


class ProfileFamily:
    """The closed family of reachable range pairs for one algebra pair."""

    def __init__(self, pair: AlgebraPair, profiles: list[LinearProfile]):
        self.pair = pair
        self.profiles = profiles  # sorted by witness order
        self._by_key = {(p.left, p.right): p for p in profiles}

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self):
        return iter(self.profiles)


def lifted_range(term: Term, algebra: Algebra) -> frozenset[str]:
    """Set-lifted bottom-up range; exact for linear terms."""
    if isinstance(term, Var):
        return frozenset(algebra.carrier)
    if isinstance(term, Const):
        algebra.require_element(term.name)
        return frozenset({term.name})
    arg_sets = [lifted_range(a, algebra) for a in term.args]
    return frozenset(
        algebra.apply(term.op, combo) for combo in product(*arg_sets)
    )


def _lift(algebra: Algebra, sym: str, sets: tuple[frozenset[str], ...]) -> frozenset[str]:
    return frozenset(algebra.apply(sym, combo) for combo in product(*sets))


def reachable_profiles(pair: AlgebraPair) -> ProfileFamily:
    """Least closed family of range pairs, minimal witness per pair.

    Explored in witness order (depth, size, spelling with variables last),
    so the first witness reaching a range pair is kept.  Terminates because
    profiles live in 2^A x 2^B.
    """
    left_alg, right_alg = pair.left, pair.right
    sig = left_alg.signature

    counter = 0
    heap: list = []

    def push(witness: Term, left: frozenset[str], right: frozenset[str]):
        nonlocal counter
        heapq.heappush(heap, (witness_key(witness, sig), counter, witness, left, right))
        counter += 1

    push(Var(1), frozenset(left_alg.carrier), frozenset(right_alg.carrier))
    for c in sig.constant_symbols:
        push(Const(c), frozenset({c}), frozenset({c}))

    accepted: dict[tuple[frozenset[str], frozenset[str]], LinearProfile] = {}
    order: list[LinearProfile] = []

    def combine(sym: str, arity: int, parts: tuple[LinearProfile, ...]):
        left = _lift(left_alg, sym, tuple(p.left for p in parts))
        right = _lift(right_alg, sym, tuple(p.right for p in parts))
        offset = 0
        args = []
        for p in parts:
            args.append(shift_variables(p.witness, offset))
            offset += len(term_variables(p.witness))
        witness = canonicalize(App(sym, tuple(args)))
        push(witness, left, right)

    while heap:
        _, _, witness, left, right = heapq.heappop(heap)
        key = (left, right)
        if key in accepted:
            continue
        profile = LinearProfile(left, right, witness)
        accepted[key] = profile
        order.append(profile)
        existing = list(order)
        for sym, arity in sig.operations:
            for combo in product(existing, repeat=arity):
                if profile not in combo:
                    continue
                combine(sym, arity, combo)

    return ProfileFamily(pair, order)


def linear_gen_member(family: ProfileFamily, a: str, b: str) -> bool:
    """True iff some linear term generalizes a on the left and b on the right."""
    family.pair.left.require_element(a)
    family.pair.right.require_element(b)
    return any(a in p.left and b in p.right for p in family)


def linear_gen_subset(
    family: ProfileFamily, a: str, b: str, b_prime: str
) -> tuple[bool, Term | None]:
    """Decide Gen^lin(a,b) subset-of Gen^lin(a,b').

    Returns (True, None) or (False, t) with t a minimal linear term in
    Gen(a,b) but not in Gen(a,b').
    """
    family.pair.left.require_element(a)
    family.pair.right.require_element(b)
    family.pair.right.require_element(b_prime)
    for p in family:
        if a in p.left and b in p.right and b_prime not in p.right:
            return False, p.witness
    return True, None


def dump_profiles(family: ProfileFamily) -> str:
    """Debug dump, one line per profile in witness order."""
    left_order = {e: i for i, e in enumerate(family.pair.left.carrier)}
    right_order = {e: i for i, e in enumerate(family.pair.right.carrier)}
    lines = []
    for p in family:
        ls = ",".join(sorted(p.left, key=left_order.get))
        rs = ",".join(sorted(p.right, key=right_order.get))
        lines.append(f"{{{ls}}} | {{{rs}}} | witness: {render_term(p.witness)}")
    return "\n".join(lines) + "\n"
