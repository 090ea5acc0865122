"""Problem symmetries: automorphisms, optionally composed with translations.

Sequences are equivalent when one is the image of the other under a group
automorphism (all problems) or under x -> phi(x) + c (exact-exponent problem
only, where translation preserves avoidance). A context materializes the
symmetry group as byte permutation tables over two element index orders:

 * lex order - indices sorted by residue vector; public canonical forms are
   lexicographically least here, matching the JSON element order;
 * search order - indices sorted by (element order, residues); the extension
   search prunes by minimality in this order.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from . import kernel
from .errors import CapExceededError, ModeError
from .groups import (
    DEFAULT_ENUMERATION_CAP,
    GroupIndex,
    GroupSpec,
    check_cap,
    enumerate_automorphisms,
    order_of,
)
from .kernel import PermSet
from .sequences import LengthSet, Sequence


class EquivalenceMode(enum.Enum):
    AUTOMORPHISM = "automorphism"
    AUTOMORPHISM_TRANSLATION = "automorphism-and-translation"

    @classmethod
    def parse(cls, text: str) -> "EquivalenceMode":
        for mode in cls:
            if mode.value == text:
                return mode
        raise ValueError(f"unknown equivalence mode {text!r}")


def check_mode_legal(mode: EquivalenceMode, length_set: LengthSet, group: GroupSpec) -> None:
    """Translation symmetry is only sound for the exact-exponent problem."""
    if mode is EquivalenceMode.AUTOMORPHISM_TRANSLATION:
        if not length_set.is_exact_exponent(group):
            raise ModeError(
                "automorphism-and-translation is only legal for the "
                "exact-exponent length set"
            )


@lru_cache(maxsize=None)
def automorphism_tables(group: GroupSpec) -> tuple:
    return tuple(enumerate_automorphisms(group))


@lru_cache(maxsize=None)
def get_context(group: GroupSpec, mode: EquivalenceMode) -> "SymmetryContext":
    return SymmetryContext(group, mode)


class SymmetryContext:
    """Symmetry tables of one (group, mode) pair in both index orders."""

    def __init__(self, group: GroupSpec, mode: EquivalenceMode,
                 cap: int = DEFAULT_ENUMERATION_CAP):
        check_cap(group, cap)
        self.group = group
        self.mode = mode
        gi = GroupIndex(group)
        self.gi = gi
        m = gi.m
        self.m = m

        # search order: by (element order, residues); identity has rank 0
        by_key = sorted(range(m), key=lambda i: (order_of(group, gi.elements[i]),
                                                 gi.elements[i]))
        self.rank_to_lex = tuple(by_key)
        lex_to_rank = [0] * m
        for rank, lex in enumerate(by_key):
            lex_to_rank[lex] = rank
        self.lex_to_rank = tuple(lex_to_rank)

        auts = automorphism_tables(group)
        if mode is EquivalenceMode.AUTOMORPHISM:
            tables = list(auts)
        else:
            tables = []
            for t in auts:
                for c in range(m):
                    row = gi.add_row(gi.elements[c])
                    tables.append(tuple(row[t[i]] for i in range(m)))
        self.size = len(tables)
        self.perms_lex = PermSet([bytes(t) for t in tables])
        self.perms_search = PermSet(
            [bytes(lex_to_rank[t[by_key[r]]] for r in range(m)) for t in tables]
        )

    # --- sequence <-> index-string codecs -------------------------------

    def seq_to_lex_bytes(self, seq: Sequence) -> bytes:
        out = bytearray()
        for elt, mult in seq.items:
            out.extend([self.gi.index(elt)] * mult)
        return bytes(out)

    def lex_bytes_to_seq(self, data: bytes) -> Sequence:
        return Sequence.from_elements(self.group, (self.gi.elements[i] for i in data))

    def rank_bytes_to_seq(self, data: bytes) -> Sequence:
        return Sequence.from_elements(
            self.group, (self.gi.elements[self.rank_to_lex[r]] for r in data)
        )


def canonical_form(seq: Sequence, mode: EquivalenceMode,
                   cap: int = DEFAULT_ENUMERATION_CAP) -> Sequence:
    """Lexicographically least image of the sequence under the mode's symmetry.

    For the translation mode the minimum runs jointly over all translations
    and automorphisms (tables x -> phi(x) + c), which is the orbit minimum
    under the combined action. Idempotent and constant on orbits.
    """
    if not seq:
        return seq
    ctx = get_context(seq.group, mode)
    data = ctx.seq_to_lex_bytes(seq)
    best = kernel.lex_min_image(data, ctx.perms_lex)
    return ctx.lex_bytes_to_seq(best)


def orbit_of(seq: Sequence, mode: EquivalenceMode) -> frozenset:
    """All distinct images of the sequence under the mode's symmetry group."""
    ctx = get_context(seq.group, mode)
    data = ctx.seq_to_lex_bytes(seq)
    images = {bytes(sorted(map(row.__getitem__, data))) for row in ctx.perms_lex.rows}
    return frozenset(ctx.lex_bytes_to_seq(b) for b in images)
