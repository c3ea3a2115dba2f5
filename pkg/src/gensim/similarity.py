"""User-facing similarity decisions over a chosen engine fragment.

``a <~ b`` holds when the shared generalization set of (a, b) is maximal
with respect to b: no admissible competitor b' realizes a strictly larger
shared set.  The competitor b' = a is excluded (by name identity) when a
also names an element of the right-hand carrier; the exclusion never
applies to b itself.  ``a ~~ b`` is the conjunction of both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import Algebra, AlgebraError, AlgebraPair, self_pair, validate_pair
from . import automata
from .general import exactness_label, saturate_profiles, general_gen_subset
from .linear import ProfileFamily, linear_gen_subset, reachable_profiles
from .monolinear import PairedPolynomial, m_subset, paired_clone
from .terms import Term, render_term, term_size, witness_key
from .verdict import (
    Certificate,
    DOMINATING_ELEMENT,
    EXACT,
    LINEAR_FRAGMENT,
    MISSING_PARTNER,
    MONOLINEAR_FRAGMENT,
    Verdict,
)

FRAGMENT_CHOICES = ("auto", "unary", "linear", "monolinear", "general")


@dataclass(frozen=True)
class QueryConfig:
    fragment: str = "auto"
    max_vars: int = 2  # K for the general engine
    max_depth: int = 4
    cap: int = 200_000
    seed: int = 0

    def __post_init__(self):
        if self.fragment not in FRAGMENT_CHOICES:
            raise AlgebraError(f"unknown fragment {self.fragment!r}")
        if self.max_vars < 1 or self.max_depth < 0 or self.cap < 1:
            raise AlgebraError("bounds must be positive")


class Engine:
    """Subset-query adapter over one pair; built once, queried many times."""

    label: str

    def subset(self, a: str, b: str, b_prime: str) -> tuple[bool, Term | None]:
        raise NotImplementedError

    def classes(self) -> list[tuple[frozenset[str], frozenset[str], Term]]:
        """Semantic term classes as (left range, right range, witness)."""
        raise NotImplementedError


class LinearEngine(Engine):
    def __init__(self, pair: AlgebraPair):
        self.pair = pair
        self.family = reachable_profiles(pair)
        self.label = EXACT if pair.left.signature.is_unary() else LINEAR_FRAGMENT

    def subset(self, a, b, b_prime):
        return linear_gen_subset(self.family, a, b, b_prime)

    def classes(self):
        return [(p.left, p.right, p.witness) for p in self.family]


class UnaryEngine(Engine):
    """Automata-backed engine; exact for unary signatures."""

    def __init__(self, pair: AlgebraPair):
        if not pair.left.signature.is_unary():
            raise automata.NonUnaryError(
                "the unary engine requires an all-unary signature"
            )
        self.pair = pair
        self.label = EXACT
        self._left_lang = {
            e: automata.gen_language(pair.left, e) for e in pair.left.carrier
        }
        self._right_lang = {
            e: automata.gen_language(pair.right, e) for e in pair.right.carrier
        }
        self._shared: dict[tuple[str, str], automata.GenDfa] = {}

    def _shared_language(self, a: str, b: str) -> automata.GenDfa:
        key = (a, b)
        if key not in self._shared:
            self._shared[key] = automata.dfa_intersect(
                self._left_lang[a], self._right_lang[b]
            )
        return self._shared[key]

    def subset(self, a, b, b_prime):
        self.pair.left.require_element(a)
        self.pair.right.require_element(b)
        self.pair.right.require_element(b_prime)
        return automata.dfa_subset(
            self._shared_language(a, b), self._shared_language(a, b_prime)
        )

    def classes(self):
        # Range-based class search is delegated to the linear engine, which
        # is equally exact on unary signatures.
        if not hasattr(self, "_linear"):
            self._linear = LinearEngine(self.pair)
        return self._linear.classes()


class MonolinearEngine(Engine):
    def __init__(self, pair: AlgebraPair):
        self.pair = pair
        self.clone_pairs: list[PairedPolynomial] = paired_clone(pair)
        self.label = MONOLINEAR_FRAGMENT

    def subset(self, a, b, b_prime):
        return m_subset(self.clone_pairs, self.pair, a, b, b_prime)

    def classes(self):
        return [
            (frozenset(p.left), frozenset(p.right), p.witness)
            for p in self.clone_pairs
        ]


class GeneralEngine(Engine):
    def __init__(self, pair: AlgebraPair, k: int, cap: int):
        self.pair = pair
        self.profiles = saturate_profiles(pair, k, cap=cap)
        self.label = exactness_label(pair, k)
        self._left_names = pair.left.carrier
        self._right_names = pair.right.carrier

    def subset(self, a, b, b_prime):
        return general_gen_subset(self.profiles, self.pair, a, b, b_prime)

    def classes(self):
        return [
            (
                frozenset(self._left_names[i] for i in set(p.left)),
                frozenset(self._right_names[i] for i in set(p.right)),
                p.witness,
            )
            for p in self.profiles
        ]


def build_engine(pair: AlgebraPair, config: QueryConfig | None = None) -> Engine:
    config = config or QueryConfig()
    fragment = config.fragment
    if fragment == "auto":
        fragment = "unary" if pair.left.signature.is_unary() else "linear"
    if fragment == "unary":
        return UnaryEngine(pair)
    if fragment == "linear":
        return LinearEngine(pair)
    if fragment == "monolinear":
        return MonolinearEngine(pair)
    return GeneralEngine(pair, config.max_vars, config.cap)


def _admissible_competitors(pair: AlgebraPair, a: str, b: str) -> list[str]:
    a_in_right = a in pair.right.carrier
    return [
        b_prime
        for b_prime in pair.right.carrier
        if b_prime != b and not (a_in_right and b_prime == a)
    ]


def decide_leq(
    pair: AlgebraPair,
    a: str,
    b: str,
    config: QueryConfig | None = None,
    engine: Engine | None = None,
) -> Verdict:
    """Is the shared generalization set of (a, b) b-maximal?

    On failure the certificate names a dominating element b' together with
    an evidence term in Gen(a, b') but not in Gen(a, b).
    """
    engine = engine or build_engine(pair, config)
    pair.left.require_element(a)
    pair.right.require_element(b)
    for b_prime in _admissible_competitors(pair, a, b):
        forward, _ = engine.subset(a, b, b_prime)
        if not forward:
            continue
        backward, evidence = engine.subset(a, b_prime, b)
        if not backward:
            return Verdict(
                False,
                Certificate(DOMINATING_ELEMENT, element=b_prime, term=evidence),
                engine.label,
            )
    return Verdict(True, None, engine.label)


def decide_approx(
    pair: AlgebraPair,
    a: str,
    b: str,
    config: QueryConfig | None = None,
    engine: Engine | None = None,
    reverse_engine: Engine | None = None,
) -> Verdict:
    """g-similarity: both directed maximality checks."""
    forward = decide_leq(pair, a, b, config, engine)
    if not forward.holds:
        cert = Certificate(
            DOMINATING_ELEMENT,
            element=forward.certificate.element,
            term=forward.certificate.term,
            direction=(pair.left.name, pair.right.name),
        )
        return Verdict(False, cert, forward.fragment_label)
    swapped = pair.swapped()
    backward = decide_leq(swapped, b, a, config, reverse_engine)
    if not backward.holds:
        cert = Certificate(
            DOMINATING_ELEMENT,
            element=backward.certificate.element,
            term=backward.certificate.term,
            direction=(pair.right.name, pair.left.name),
        )
        return Verdict(False, cert, backward.fragment_label)
    return Verdict(True, None, forward.fragment_label)


def decide_algebra_leq(pair: AlgebraPair, config: QueryConfig | None = None) -> Verdict:
    """Every left element must have a g-similar partner on the right."""
    engine = build_engine(pair, config)
    reverse = build_engine(pair.swapped(), config)
    for a in pair.left.carrier:
        if not any(
            decide_approx(pair, a, b, config, engine, reverse).holds
            for b in pair.right.carrier
        ):
            return Verdict(
                False, Certificate(MISSING_PARTNER, element=a), engine.label
            )
    return Verdict(True, None, engine.label)


def decide_algebra_approx(pair: AlgebraPair, config: QueryConfig | None = None) -> Verdict:
    forward = decide_algebra_leq(pair, config)
    if not forward.holds:
        return forward
    backward = decide_algebra_leq(pair.swapped(), config)
    if not backward.holds:
        cert = Certificate(
            MISSING_PARTNER,
            element=backward.certificate.element,
            direction=(pair.right.name, pair.left.name),
        )
        return Verdict(False, cert, backward.fragment_label)
    return forward


@dataclass
class SimilarityMatrix:
    pair: AlgebraPair
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    leq: dict  # (a, b) -> Verdict for a <~ b
    geq: dict  # (a, b) -> Verdict for b <~ a (on the swapped pair)
    approx: dict  # (a, b) -> Verdict

    def to_dict(self) -> dict:
        cells = []
        for a in self.rows:
            for b in self.cols:
                cells.append(
                    {
                        "a": a,
                        "b": b,
                        "leq": self.leq[(a, b)].to_dict(),
                        "geq": self.geq[(a, b)].to_dict(),
                        "approx": self.approx[(a, b)].to_dict(),
                    }
                )
        return {
            "left": self.pair.left.name,
            "right": self.pair.right.name,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "cells": cells,
        }

    def render_text(self) -> str:
        width = max([3] + [len(e) for e in self.rows + self.cols]) + 1
        header = " " * width + "".join(b.rjust(width) for b in self.cols)
        lines = [header]
        for a in self.rows:
            cells = []
            for b in self.cols:
                if self.approx[(a, b)].holds:
                    mark = "~~"
                elif self.leq[(a, b)].holds:
                    mark = "<~"
                elif self.geq[(a, b)].holds:
                    mark = ">~"
                else:
                    mark = "--"
                cells.append(mark.rjust(width))
            lines.append(a.rjust(width) + "".join(cells))
        return "\n".join(lines) + "\n"


def similarity_matrix(pair: AlgebraPair, config: QueryConfig | None = None) -> SimilarityMatrix:
    """All pairwise directed and symmetric verdicts, declaration order."""
    engine = build_engine(pair, config)
    reverse = build_engine(pair.swapped(), config)
    leq, geq, approx = {}, {}, {}
    for a in pair.left.carrier:
        for b in pair.right.carrier:
            v_leq = decide_leq(pair, a, b, config, engine)
            v_geq = decide_leq(pair.swapped(), b, a, config, reverse)
            if v_leq.holds and v_geq.holds:
                v_approx = Verdict(True, None, v_leq.fragment_label)
            else:
                failing = v_leq if not v_leq.holds else v_geq
                names = (
                    (pair.left.name, pair.right.name)
                    if not v_leq.holds
                    else (pair.right.name, pair.left.name)
                )
                cert = Certificate(
                    DOMINATING_ELEMENT,
                    element=failing.certificate.element,
                    term=failing.certificate.term,
                    direction=names,
                )
                v_approx = Verdict(False, cert, failing.fragment_label)
            leq[(a, b)] = v_leq
            geq[(a, b)] = v_geq
            approx[(a, b)] = v_approx
    return SimilarityMatrix(
        pair, pair.left.carrier, pair.right.carrier, leq, geq, approx
    )


def find_characteristic_set(
    pair: AlgebraPair,
    a: str,
    b: str,
    max_size: int = 3,
    config: QueryConfig | None = None,
    engine: Engine | None = None,
) -> list[Term] | None:
    """Minimum set of shared generalizations pinning b down uniquely.

    Conditions: every member generalizes a (left) and b (right), and no
    admissible competitor b' (b' != b, and b' != a by name) lies in the
    intersection of the right-hand ranges.  The search space is the
    semantic classes of the selected fragment, so exhaustion claims are
    fragment-relative.
    """
    engine = engine or build_engine(pair, config)
    pair.left.require_element(a)
    pair.right.require_element(b)
    sig = pair.left.signature
    candidates = [
        (left, right, witness)
        for left, right, witness in engine.classes()
        if a in left and b in right
    ]
    candidates.sort(key=lambda c: witness_key(c[2], sig))
    bad = set(_admissible_competitors(pair, a, b))
    for size in range(1, max_size + 1):
        best: list[Term] | None = None
        best_key = None
        for combo in combinations(candidates, size):
            right_meet = None
            for _, right, _ in combo:
                right_meet = right if right_meet is None else right_meet & right
            if right_meet & bad:
                continue
            terms = [w for _, _, w in combo]
            key = (
                sum(term_size(t) for t in terms),
                tuple(sorted(render_term(t) for t in terms)),
            )
            if best_key is None or key < best_key:
                best, best_key = terms, key
        if best is not None:
            return best
    return None


@dataclass
class ReflexivityReport:
    pair: AlgebraPair
    checked: tuple[str, ...]
    violations: list[tuple[str, tuple[str, str], Verdict]]  # element, direction, verdict

    @property
    def reflexive(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "left": self.pair.left.name,
            "right": self.pair.right.name,
            "checked": list(self.checked),
            "reflexive": self.reflexive,
            "violations": [
                {"element": e, "direction": list(d), "verdict": v.to_dict()}
                for e, d, v in self.violations
            ],
        }


def check_reflexive(pair: AlgebraPair, config: QueryConfig | None = None) -> ReflexivityReport:
    """Test a <~ a in both directions over the shared-name overlap."""
    engine = build_engine(pair, config)
    reverse = build_engine(pair.swapped(), config)
    violations = []
    for a in pair.overlap:
        forward = decide_leq(pair, a, a, config, engine)
        if not forward.holds:
            violations.append((a, (pair.left.name, pair.right.name), forward))
        backward = decide_leq(pair.swapped(), a, a, config, reverse)
        if not backward.holds:
            violations.append((a, (pair.right.name, pair.left.name), backward))
    return ReflexivityReport(pair, pair.overlap, violations)


@dataclass
class TransitivityReport:
    relation: str
    triples_checked: int
    violations: list[tuple[str, str, str]]
    details: dict

    @property
    def transitive(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "triples_checked": self.triples_checked,
            "transitive": self.transitive,
            "violations": [list(v) for v in self.violations],
            "details": self.details,
        }


def check_transitive(
    algebra_or_triple,
    config: QueryConfig | None = None,
    relation: str = "approx",
) -> TransitivityReport:
    """Exhaustive transitivity test.

    A single algebra checks all element triples of the relation with
    itself.  A triple (A, B, C) of algebras checks chains through the
    pairs (A,B), (B,C) against (A,C).
    """
    if relation not in ("leq", "approx"):
        raise AlgebraError(f"unknown relation {relation!r}")
    if isinstance(algebra_or_triple, Algebra):
        algebra = algebra_or_triple
        pair = self_pair(algebra)
        matrix = similarity_matrix(pair, config)
        rel = matrix.approx if relation == "approx" else matrix.leq
        violations = []
        count = 0
        for x in algebra.carrier:
            for y in algebra.carrier:
                if not rel[(x, y)].holds:
                    continue
                for z in algebra.carrier:
                    count += 1
                    if rel[(y, z)].holds and not rel[(x, z)].holds:
                        violations.append((x, y, z))
        return TransitivityReport(
            relation, count, violations, {"algebra": algebra.name}
        )
    a_alg, b_alg, c_alg = algebra_or_triple
    pair_ab = validate_pair(a_alg, b_alg)
    pair_bc = validate_pair(b_alg, c_alg)
    pair_ac = validate_pair(a_alg, c_alg)
    m_ab = similarity_matrix(pair_ab, config)
    m_bc = similarity_matrix(pair_bc, config)
    m_ac = similarity_matrix(pair_ac, config)
    pick = (lambda m: m.approx) if relation == "approx" else (lambda m: m.leq)
    violations = []
    count = 0
    for x in a_alg.carrier:
        for y in b_alg.carrier:
            if not pick(m_ab)[(x, y)].holds:
                continue
            for z in c_alg.carrier:
                count += 1
                if pick(m_bc)[(y, z)].holds and not pick(m_ac)[(x, z)].holds:
                    violations.append((x, y, z))
    return TransitivityReport(
        relation,
        count,
        violations,
        {"algebras": [a_alg.name, b_alg.name, c_alg.name]},
    )
