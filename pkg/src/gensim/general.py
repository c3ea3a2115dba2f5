"""General engine: saturation over K-variable function profiles.

A term over variables z1..zK induces a function A^K -> A on the left and
B^K -> B on the right.  The reachable pairs of such functions are the least
set containing the projections and constants, closed componentwise under
the operations.  Verdicts computed on the K-variable fragment are exact for
all terms once K reaches |A| * |B|: a separating term can always have
variables identified down to that many, because identifying variables only
shrinks ranges and therefore preserves a separator.  That bound is derived
here, not quoted, and the test suite validates it against the brute-force
oracle before it is relied on.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product

from .algebra import Algebra, AlgebraError, AlgebraPair
from .terms import (
    Term,
    App,
    Const,
    Var,
    canonicalize,
    enumerate_terms,
    is_generalization,
    range_of_term,
    term_variables,
    witness_key,
    GENERAL,
)
from .verdict import EXACT, exact_for_vars


class SaturationCapError(AlgebraError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(
            f"profile saturation exceeded the cap of {cap} profiles; "
            "raise the cap or lower K"
        )


@dataclass(frozen=True)
class FunctionProfile:
    var_count: int
    left: tuple[int, ...]  # value index per assignment id over A^K
    right: tuple[int, ...]
    witness: Term


def exactness_label(pair: AlgebraPair, k: int) -> str:
    if k >= len(pair.left.carrier) * len(pair.right.carrier):
        return EXACT
    return exact_for_vars(k)


def _op_index_table(algebra: Algebra, sym: str, arity: int) -> dict[tuple[int, ...], int]:
    index = {e: i for i, e in enumerate(algebra.carrier)}
    return {
        tuple(index[x] for x in tup): index[out]
        for tup, out in algebra.tables[sym].items()
    }


def saturate_profiles(pair: AlgebraPair, k: int, cap: int = 200_000) -> list[FunctionProfile]:
    """Least closed set of K-variable function pairs, minimal witnesses.

    The theoretical profile space is doubly exponential, so feasibility is
    enforced as a runtime cap on the number of accepted profiles rather
    than a priori.
    """
    if k < 1:
        raise AlgebraError("K must be >= 1")
    left_alg, right_alg = pair.left, pair.right
    sig = left_alg.signature
    nl, nr = len(left_alg.carrier), len(right_alg.carrier)
    left_assignments = list(product(range(nl), repeat=k))
    right_assignments = list(product(range(nr), repeat=k))

    op_left = {sym: _op_index_table(left_alg, sym, ar) for sym, ar in sig.operations}
    op_right = {sym: _op_index_table(right_alg, sym, ar) for sym, ar in sig.operations}

    heap: list = []
    counter = 0
    best_pushed: dict[tuple, tuple] = {}

    def push(term: Term, left: tuple[int, ...], right: tuple[int, ...]):
        nonlocal counter
        key = (left, right)
        wkey = witness_key(term, sig)
        known = best_pushed.get(key)
        if known is not None and known <= wkey:
            return
        best_pushed[key] = wkey
        heapq.heappush(heap, (wkey, counter, term, left, right))
        counter += 1

    for i in range(k):
        push(
            Var(i + 1),
            tuple(a[i] for a in left_assignments),
            tuple(a[i] for a in right_assignments),
        )
    for c in sig.constant_symbols:
        li = left_alg.index(c)
        ri = right_alg.index(c)
        push(Const(c), (li,) * len(left_assignments), (ri,) * len(right_assignments))

    accepted: dict[tuple[tuple[int, ...], tuple[int, ...]], FunctionProfile] = {}
    order: list[FunctionProfile] = []
    while heap:
        _, _, term, left, right = heapq.heappop(heap)
        key = (left, right)
        if key in accepted:
            continue
        profile = FunctionProfile(len(term_variables(term)), left, right, term)
        accepted[key] = profile
        order.append(profile)
        if len(order) > cap:
            raise SaturationCapError(cap)
        for sym, arity in sig.operations:
            tl, tr = op_left[sym], op_right[sym]
            for combo in product(order, repeat=arity):
                if profile not in combo:
                    continue
                new_left = tuple(
                    tl[tuple(p.left[i] for p in combo)]
                    for i in range(len(left_assignments))
                )
                new_right = tuple(
                    tr[tuple(p.right[i] for p in combo)]
                    for i in range(len(right_assignments))
                )
                if (new_left, new_right) in accepted:
                    continue
                push(App(sym, tuple(p.witness for p in combo)), new_left, new_right)
    return order


def general_gen_subset(
    profiles: list[FunctionProfile],
    pair: AlgebraPair,
    a: str,
    b: str,
    b_prime: str,
) -> tuple[bool, Term | None]:
    """Decide Gen(a,b) subset-of Gen(a,b') on the saturated fragment."""
    ai = pair.left.index(a)
    bi = pair.right.index(b)
    bpi = pair.right.index(b_prime)
    for p in profiles:
        if ai in p.left and bi in p.right and bpi not in p.right:
            return False, canonicalize(p.witness)
    return True, None


def brute_force_gen(
    algebra: Algebra,
    a: str,
    max_depth: int,
    max_vars: int,
    fragment: str = GENERAL,
    cap: int = 1_000_000,
    max_size: int | None = None,
) -> list[Term]:
    """Direct-definition oracle: enumerate terms, keep the generalizations."""
    algebra.require_element(a)
    terms = enumerate_terms(
        algebra.signature, max_depth, max_vars, fragment, cap=cap, max_size=max_size
    )
    return [t for t in terms if is_generalization(t, algebra, a)]


def brute_force_subset(
    pair: AlgebraPair,
    a: str,
    b: str,
    b_prime: str,
    max_depth: int,
    max_vars: int,
    fragment: str = GENERAL,
    cap: int = 1_000_000,
    max_size: int | None = None,
) -> tuple[bool, Term | None]:
    """Oracle-level subset verdict over the enumerated term family."""
    pair.left.require_element(a)
    pair.right.require_element(b)
    pair.right.require_element(b_prime)
    terms = enumerate_terms(
        pair.left.signature, max_depth, max_vars, fragment, cap=cap, max_size=max_size
    )
    for t in terms:
        left_range = range_of_term(t, pair.left)
        if a not in left_range:
            continue
        right_range = range_of_term(t, pair.right)
        if b in right_range and b_prime not in right_range:
            return False, t
    return True, None
