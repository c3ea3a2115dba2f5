"""Finite algebras over a shared signature: parsing, validation, rendering.

Carriers are finite, explicitly enumerated lists of element names.  Element
declaration order fixes every downstream iteration order, so parsing is
deterministic and reports are byte-stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping


VARIABLE_RE = re.compile(r"^z[0-9]+$")


class AlgebraError(Exception):
    """Base class for algebra construction and validation failures."""


class AlgebraParseError(AlgebraError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SignatureMismatchError(AlgebraError):
    """The two algebras of a pair do not share a signature."""


@dataclass(frozen=True)
class Signature:
    """Operation symbols with arities plus the distinguished constant symbols.

    Constant symbols name carrier elements directly; nullary operations are
    not supported (use constants instead).
    """

    operations: tuple[tuple[str, int], ...]
    constant_symbols: tuple[str, ...] = ()

    def __post_init__(self):
        seen: set[str] = set()
        for sym, arity in self.operations:
            if arity < 1:
                raise AlgebraError(f"operation {sym!r} has arity {arity}; must be >= 1")
            if sym in seen:
                raise AlgebraError(f"duplicate operation symbol {sym!r}")
            if VARIABLE_RE.match(sym):
                raise AlgebraError(f"operation symbol {sym!r} clashes with variable names")
            seen.add(sym)
        for c in self.constant_symbols:
            if c in seen:
                raise AlgebraError(f"constant symbol {c!r} clashes with an operation symbol")
            if VARIABLE_RE.match(c):
                raise AlgebraError(f"constant symbol {c!r} clashes with variable names")

    @property
    def op_symbols(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.operations)

    def arity(self, sym: str) -> int:
        for s, k in self.operations:
            if s == sym:
                return k
        raise AlgebraError(f"unknown operation symbol {sym!r}")

    def is_unary(self) -> bool:
        return all(k == 1 for _, k in self.operations)


@dataclass(frozen=True)
class Algebra:
    """A named finite algebra: carrier, total operation tables, constants."""

    name: str
    carrier: tuple[str, ...]
    signature: Signature
    tables: Mapping[str, Mapping[tuple[str, ...], str]]
    constants: frozenset[str]

    def __post_init__(self):
        if not self.carrier:
            raise AlgebraError(f"algebra {self.name!r} has an empty carrier")
        if len(set(self.carrier)) != len(self.carrier):
            raise AlgebraError(f"algebra {self.name!r} has duplicate elements")
        elements = set(self.carrier)
        for sym, arity in self.signature.operations:
            table = self.tables.get(sym)
            if table is None:
                raise AlgebraError(f"algebra {self.name!r}: missing table for {sym!r}")
            for tup in product(self.carrier, repeat=arity):
                if tup not in table:
                    raise AlgebraError(
                        f"algebra {self.name!r}: missing table row for "
                        f"{sym}({', '.join(tup)})"
                    )
            for tup, out in table.items():
                if len(tup) != arity:
                    raise AlgebraError(
                        f"algebra {self.name!r}: {sym!r} row {tup} has wrong arity"
                    )
                if any(x not in elements for x in tup):
                    raise AlgebraError(
                        f"algebra {self.name!r}: {sym!r} row {tup} uses unknown elements"
                    )
                if out not in elements:
                    raise AlgebraError(
                        f"algebra {self.name!r}: {sym}({', '.join(tup)}) -> {out!r} "
                        "is outside the carrier"
                    )
        for c in self.constants:
            if c not in elements:
                raise AlgebraError(f"algebra {self.name!r}: constant {c!r} not in carrier")
        for c in self.signature.constant_symbols:
            if c not in elements:
                raise AlgebraError(
                    f"algebra {self.name!r}: constant symbol {c!r} names no carrier element"
                )

    def apply(self, sym: str, args: Iterable[str]) -> str:
        return self.tables[sym][tuple(args)]

    def index(self, element: str) -> int:
        try:
            return self.carrier.index(element)
        except ValueError:
            raise AlgebraError(f"element {element!r} not in carrier of {self.name!r}") from None

    def require_element(self, element: str) -> str:
        if element not in self.carrier:
            raise AlgebraError(f"element {element!r} not in carrier of {self.name!r}")
        return element


@dataclass(frozen=True)
class AlgebraPair:
    """A validated pair of algebras over one shared signature."""

    left: Algebra
    right: Algebra

    @property
    def overlap(self) -> tuple[str, ...]:
        """Shared element names, in left-carrier declaration order.

        Cross-algebra element identity is name equality; the overlap drives
        the competitor exclusion in maximality checks.
        """
        right_names = set(self.right.carrier)
        return tuple(e for e in self.left.carrier if e in right_names)

    def swapped(self) -> "AlgebraPair":
        return AlgebraPair(self.right, self.left)


def make_algebra(
    name: str,
    carrier: Iterable[str],
    operations: Mapping[str, Mapping[tuple[str, ...], str]] | None = None,
    constants: Iterable[str] | str = (),
    arities: Mapping[str, int] | None = None,
) -> Algebra:
    """Convenience constructor used by tests and generated fixtures.

    Arities default to the key length of the first table row of each
    operation; tables may use bare strings as unary keys.
    """
    carrier = tuple(carrier)
    operations = operations or {}
    norm_tables: dict[str, dict[tuple[str, ...], str]] = {}
    sig_ops: list[tuple[str, int]] = []
    for sym, table in operations.items():
        rows: dict[tuple[str, ...], str] = {}
        for key, out in table.items():
            tup = (key,) if isinstance(key, str) else tuple(key)
            rows[tup] = out
        arity = arities[sym] if arities and sym in arities else len(next(iter(rows)))
        sig_ops.append((sym, arity))
        norm_tables[sym] = rows
    if constants == "all":
        const_tuple = carrier
    else:
        const_tuple = tuple(constants)
    sig = Signature(tuple(sig_ops), const_tuple)
    return Algebra(name, carrier, sig, norm_tables, frozenset(const_tuple))


def _strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


_ROW_RE = re.compile(r"^\(?\s*(?P<args>[^()]*?)\s*\)?\s*->\s*(?P<out>\S+)$")


def parse_algebra(text: str) -> Algebra:
    """Parse the line-oriented ``.alg`` format into a validated Algebra."""
    lines = text.splitlines()
    name: str | None = None
    carrier: tuple[str, ...] = ()
    constants: tuple[str, ...] = ()
    seen_constants = False
    sig_ops: list[tuple[str, int]] = []
    tables: dict[str, dict[tuple[str, ...], str]] = {}
    current_op: tuple[str, int] | None = None

    for lineno, raw in enumerate(lines, start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if current_op is not None and head != "end":
            sym, arity = current_op
            m = _ROW_RE.match(line)
            if not m:
                raise AlgebraParseError(f"malformed table row {line!r}", lineno)
            args_text = m.group("args")
            args = tuple(a.strip() for a in args_text.split(",")) if args_text else ()
            if len(args) != arity:
                raise AlgebraParseError(
                    f"{sym!r} expects {arity} argument(s), row has {len(args)}", lineno
                )
            for a in args:
                if a not in carrier:
                    raise AlgebraParseError(f"unknown element {a!r} in row", lineno)
            out = m.group("out")
            if out not in carrier:
                raise AlgebraParseError(
                    f"out-of-carrier output {out!r} for {sym}({', '.join(args)})", lineno
                )
            if args in tables[sym]:
                raise AlgebraParseError(
                    f"duplicate table row for {sym}({', '.join(args)})", lineno
                )
            tables[sym][args] = out
            continue
        if head == "algebra":
            if name is not None:
                raise AlgebraParseError("duplicate 'algebra' header", lineno)
            if len(parts) != 2:
                raise AlgebraParseError("expected 'algebra <name>'", lineno)
            name = parts[1]
        elif head == "elements":
            if not parts[1:]:
                raise AlgebraParseError("'elements' needs at least one name", lineno)
            if len(set(parts[1:])) != len(parts[1:]):
                raise AlgebraParseError("duplicate element name", lineno)
            carrier = tuple(parts[1:])
        elif head == "constants":
            seen_constants = True
            if parts[1:] == ["none"]:
                constants = ()
            elif parts[1:] == ["all"]:
                constants = carrier
            else:
                for c in parts[1:]:
                    if c not in carrier:
                        raise AlgebraParseError(f"unknown constant element {c!r}", lineno)
                constants = tuple(parts[1:])
        elif head == "op":
            if len(parts) != 2 or "/" not in parts[1]:
                raise AlgebraParseError("expected 'op <sym>/<arity>'", lineno)
            sym, _, arity_text = parts[1].partition("/")
            try:
                arity = int(arity_text)
            except ValueError:
                raise AlgebraParseError(f"bad arity {arity_text!r}", lineno) from None
            if sym in tables:
                raise AlgebraParseError(f"duplicate operation {sym!r}", lineno)
            if not carrier:
                raise AlgebraParseError("'op' before 'elements'", lineno)
            sig_ops.append((sym, arity))
            tables[sym] = {}
            current_op = (sym, arity)
        elif head == "end":
            if current_op is None:
                raise AlgebraParseError("'end' without an open op block", lineno)
            sym, arity = current_op
            for tup in product(carrier, repeat=arity):
                if tup not in tables[sym]:
                    raise AlgebraParseError(
                        f"missing table row for {sym}({', '.join(tup)})", lineno
                    )
            current_op = None
        else:
            raise AlgebraParseError(f"unknown directive {head!r}", lineno)

    if current_op is not None:
        raise AlgebraParseError(f"op block {current_op[0]!r} not closed with 'end'")
    if name is None:
        raise AlgebraParseError("missing 'algebra <name>' header")
    if not carrier:
        raise AlgebraParseError("missing 'elements' line")
    if not seen_constants:
        raise AlgebraParseError("missing 'constants' line")

    sig = Signature(tuple(sig_ops), constants)
    return Algebra(name, carrier, sig, tables, frozenset(constants))


def render_algebra(algebra: Algebra) -> str:
    """Render back to ``.alg`` text; parse(render(a)) equals a."""
    out = [f"algebra {algebra.name}", "elements " + " ".join(algebra.carrier)]
    const_syms = algebra.signature.constant_symbols
    if not const_syms:
        out.append("constants none")
    elif set(const_syms) == set(algebra.carrier):
        out.append("constants all")
    else:
        out.append("constants " + " ".join(const_syms))
    for sym, arity in algebra.signature.operations:
        out.append(f"op {sym}/{arity}")
        for tup in product(algebra.carrier, repeat=arity):
            res = algebra.tables[sym][tup]
            if arity == 1:
                out.append(f"  {tup[0]} -> {res}")
            else:
                out.append(f"  ({', '.join(tup)}) -> {res}")
        out.append("end")
    return "\n".join(out) + "\n"


def validate_pair(left: Algebra, right: Algebra) -> AlgebraPair:
    """Check the two algebras share a signature and return the pair."""
    if left.signature.operations != right.signature.operations:
        left_ops = dict(left.signature.operations)
        right_ops = dict(right.signature.operations)
        for sym in sorted(set(left_ops) | set(right_ops)):
            if sym not in left_ops or sym not in right_ops:
                raise SignatureMismatchError(
                    f"operation {sym!r} present in only one algebra"
                )
            if left_ops[sym] != right_ops[sym]:
                raise SignatureMismatchError(
                    f"operation {sym!r} has arity {left_ops[sym]} vs {right_ops[sym]}"
                )
        raise SignatureMismatchError("operation declaration order differs")
    if left.signature.constant_symbols != right.signature.constant_symbols:
        raise SignatureMismatchError(
            f"constant symbols differ: {left.signature.constant_symbols} "
            f"vs {right.signature.constant_symbols}"
        )
    # Constant symbols denote themselves; each must exist in both carriers.
    for c in left.signature.constant_symbols:
        if c not in right.carrier:
            raise SignatureMismatchError(f"constant {c!r} absent from {right.name!r}")
        if c not in left.carrier:
            raise SignatureMismatchError(f"constant {c!r} absent from {left.name!r}")
    return AlgebraPair(left, right)


def self_pair(algebra: Algebra) -> AlgebraPair:
    """Single-algebra mode: the pair of an algebra with itself."""
    return AlgebraPair(algebra, algebra)
