"""Multisets of group elements and symbolic length sets.

A Sequence is the free-abelian-monoid element: an unordered multiset over a
group, stored as sorted (element, multiplicity) pairs so equality is
structural. The empty sequence is a legal value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Optional, Tuple

from .errors import ArityError, NonDivisorError
from .groups import Element, GroupSpec, check_element, combine, zero


@dataclass(frozen=True)
class Sequence:
    """Finite multiset of group elements."""

    group: GroupSpec
    items: tuple  # ((element, multiplicity), ...), sorted by element

    def __init__(self, group: GroupSpec, items: Iterable[Tuple[Element, int]]):
        merged: Dict[Element, int] = {}
        for elt, mult in items:
            elt = tuple(elt)
            check_element(group, elt)
            if any(not 0 <= x < o for x, o in zip(elt, group.orders)):
                raise ValueError(f"residues out of range for {group.orders}: {elt}")
            if mult < 0:
                raise ValueError(f"negative multiplicity for {elt}")
            if mult:
                merged[elt] = merged.get(elt, 0) + mult
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "items", tuple(sorted(merged.items())))

    @classmethod
    def from_elements(cls, group: GroupSpec, elts: Iterable[Element]) -> "Sequence":
        return cls(group, ((e, 1) for e in elts))

    @classmethod
    def empty(cls, group: GroupSpec) -> "Sequence":
        return cls(group, ())

    @property
    def length(self) -> int:
        return sum(m for _, m in self.items)

    def __len__(self):
        return self.length

    def __iter__(self) -> Iterator[Element]:
        for elt, mult in self.items:
            for _ in range(mult):
                yield elt

    def __bool__(self):
        return bool(self.items)

    def multiplicity(self, g: Element) -> int:
        g = tuple(g)
        for elt, mult in self.items:
            if elt == g:
                return mult
        return 0

    def support(self) -> frozenset:
        return frozenset(elt for elt, _ in self.items)

    def height(self) -> int:
        return max((m for _, m in self.items), default=0)

    def sum(self) -> Element:
        s = zero(self.group)
        for elt, mult in self.items:
            s = combine(self.group, s, elt, mult)
        return s

    def is_squarefree(self) -> bool:
        return all(m <= 1 for _, m in self.items)

    def __mul__(self, other: "Sequence") -> "Sequence":
        if other.group != self.group:
            raise ArityError("cannot multiply sequences over different groups")
        return Sequence(self.group, self.items + other.items)

    def divides(self, other: "Sequence") -> bool:
        return self.group == other.group and all(
            other.multiplicity(e) >= m for e, m in self.items
        )

    def divide(self, divisor: "Sequence") -> "Sequence":
        """Return S * T^-1; raises NonDivisorError unless T | S."""
        if not divisor.divides(self):
            raise NonDivisorError(f"{divisor} does not divide {self}")
        counts = dict(self.items)
        for elt, mult in divisor.items:
            counts[elt] -= mult
        return Sequence(self.group, counts.items())

    def translate(self, h: Element) -> "Sequence":
        """The sequence h + S (every element shifted by h)."""
        check_element(self.group, h)
        return Sequence(
            self.group,
            ((combine(self.group, h, elt), m) for elt, m in self.items),
        )

    def stats(self) -> "SequenceStats":
        return SequenceStats(
            length=self.length,
            sum=self.sum(),
            height=self.height(),
            support=self.support(),
            squarefree=self.is_squarefree(),
        )

    def to_json_dict(self) -> dict:
        return {
            "group": list(self.group.orders),
            "elements": [[list(e), m] for e, m in self.items],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "Sequence":
        group = GroupSpec(data["group"])
        return cls(group, ((tuple(e), m) for e, m in data["elements"]))

    @classmethod
    def from_json(cls, text: str) -> "Sequence":
        return cls.from_json_dict(json.loads(text))

    def __str__(self):
        if not self.items:
            return "1"
        return "".join(
            f"{e}" + (f"^{m}" if m > 1 else "") for e, m in self.items
        )


@dataclass(frozen=True)
class SequenceStats:
    length: int
    sum: Element
    height: int
    support: frozenset
    squarefree: bool


def powered(group: GroupSpec, *pairs) -> Sequence:
    """Shorthand builder: powered(G, (g, 3), (h, 1)) = g^3 h."""
    return Sequence(group, pairs)


@dataclass(frozen=True)
class LengthSet:
    """Set of permitted subsequence lengths, symbolic or explicit.

    Kinds: "short" = [1, exp(G)], "exp" = {exp(G)}, "any" = [1, max_len],
    "explicit" = a literal set, "interval" = [lo, hi]. Symbolic kinds adapt
    to the group they are resolved against.
    """

    kind: str
    values: tuple = ()
    lo: int = 0
    hi: int = 0

    @classmethod
    def short(cls) -> "LengthSet":
        return cls("short")

    @classmethod
    def exact_exponent(cls) -> "LengthSet":
        return cls("exp")

    @classmethod
    def any_length(cls) -> "LengthSet":
        return cls("any")

    @classmethod
    def explicit(cls, values: Iterable[int]) -> "LengthSet":
        vals = tuple(sorted(set(int(v) for v in values)))
        if any(v < 1 for v in vals):
            raise ValueError("lengths must be positive")
        return cls("explicit", values=vals)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "LengthSet":
        if lo < 1:
            raise ValueError("lengths must be positive")
        return cls("interval", lo=lo, hi=hi)

    @classmethod
    def parse(cls, text: str) -> "LengthSet":
        """Parse CLI syntax: short | exp | any | a..b | comma-separated ints."""
        text = text.strip()
        if text == "short":
            return cls.short()
        if text == "exp":
            return cls.exact_exponent()
        if text == "any":
            return cls.any_length()
        if ".." in text:
            lo, hi = text.split("..")
            return cls.interval(int(lo), int(hi))
        return cls.explicit(int(v) for v in text.split(","))

    def describe(self) -> str:
        if self.kind == "explicit":
            return ",".join(str(v) for v in self.values)
        if self.kind == "interval":
            return f"{self.lo}..{self.hi}"
        return self.kind

    def resolve(self, group: GroupSpec, max_len: int) -> frozenset:
        return resolve_lengths(self, group, max_len)

    def is_exact_exponent(self, group: GroupSpec) -> bool:
        """Whether this set is exactly {exp(G)} (legality of translation)."""
        if self.kind == "exp":
            return True
        e = group.exponent
        if self.kind == "explicit":
            return self.values == (e,)
        if self.kind == "interval":
            return self.lo == self.hi == e
        return False


def resolve_lengths(length_set: LengthSet, group: GroupSpec, max_len: int) -> frozenset:
    """Concrete permitted lengths for a group and a sequence length.

    Symbolic "short" and "exp" resolve from the group alone; "any" means
    [1, max_len]; explicit sets and intervals are clipped to [1, max_len].
    Degenerate arguments (e.g. "any" with max_len = 0) give the empty set.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    kind = length_set.kind
    if kind == "short":
        return frozenset(range(1, group.exponent + 1))
    if kind == "exp":
        return frozenset((group.exponent,))
    if kind == "any":
        return frozenset(range(1, max_len + 1))
    if kind == "explicit":
        return frozenset(v for v in length_set.values if 1 <= v <= max_len)
    if kind == "interval":
        return frozenset(range(max(1, length_set.lo), min(length_set.hi, max_len) + 1))
    raise ValueError(f"unknown length set kind {kind!r}")
