"""Decision results with certificates.

Every decision surface returns a Verdict: the boolean outcome, a
certificate explaining a negative outcome, and a label describing the
exactness of the engine that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import Term, render_term

# Certificate kinds
SEPARATING_TERM = "separating-term"
DOMINATING_ELEMENT = "dominating-element"
MISSING_PARTNER = "missing-partner"
FAILING_ELEMENT = "failing-element"

# Exactness labels
EXACT = "exact"
LINEAR_FRAGMENT = "linear-fragment"
MONOLINEAR_FRAGMENT = "monolinear-fragment"


def exact_for_vars(k: int) -> str:
    return f"exact-for-{k}-vars"


def oracle_bounded(depth: int) -> str:
    return f"oracle-bounded(depth={depth})"


@dataclass(frozen=True)
class Certificate:
    kind: str
    term: Term | None = None
    element: str | None = None
    direction: tuple[str, str] | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.term is not None:
            out["term"] = render_term(self.term)
        if self.element is not None:
            out["element"] = self.element
        if self.direction is not None:
            out["direction"] = list(self.direction)
        return out


@dataclass(frozen=True)
class Verdict:
    holds: bool
    certificate: Certificate | None
    fragment_label: str

    def to_dict(self) -> dict:
        out: dict = {"holds": self.holds, "fragment": self.fragment_label}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out
