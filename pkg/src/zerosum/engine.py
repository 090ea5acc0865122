"""Decision procedures for length-constrained subsequence sums.

The workhorse is a layered reachability table over (length, element) cells,
with elements indexed in lexicographic residue order and each layer stored
as one bitmask int. A deliberately naive enumerator over all 2^|S| flat
subsequences serves as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import GuardError
from .groups import GroupIndex as _GroupIndex
from .groups import GroupSpec, lex_index
from .sequences import LengthSet, Sequence, resolve_lengths


def _shift_mask(mask: int, row: tuple) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


@dataclass(frozen=True)
class SumTable:
    """Reachability of (subsequence length, sum) cells, one bitmask per length."""

    group: GroupSpec
    lmax: int
    layers: tuple  # layers[l] bit i set <=> some length-l subsequence sums to element i

    def reachable(self, length: int, element) -> bool:
        if not 0 <= length <= self.lmax:
            return False
        return bool(self.layers[length] >> lex_index(self.group, element) & 1)


def build_sum_table(seq: Sequence, lmax: int) -> SumTable:
    """Layered DP over the multiset; each element copy is one 0/1 step."""
    gi = _GroupIndex(seq.group)
    layers = [0] * (lmax + 1)
    layers[0] = 1  # empty subsequence sums to 0 (lex index 0)
    done = 0
    for elt, mult in seq.items:
        row = gi.add_row(elt)
        for _ in range(mult):
            for l in range(min(done, lmax - 1), -1, -1):
                if layers[l]:
                    layers[l + 1] |= _shift_mask(layers[l], row)
            done += 1
    return SumTable(seq.group, lmax, tuple(layers))


def _resolved(seq: Sequence, length_set: LengthSet) -> frozenset:
    return resolve_lengths(length_set, seq.group, seq.length)


def sigma_L(seq: Sequence, length_set: LengthSet) -> frozenset:
    """All sums of nonempty subsequences whose length lies in the length set."""
    allowed = {l for l in _resolved(seq, length_set) if l <= seq.length}
    if not allowed:
        return frozenset()
    table = build_sum_table(seq, max(allowed))
    mask = 0
    for l in allowed:
        mask |= table.layers[l]
    gi = _GroupIndex(seq.group)
    out = []
    while mask:
        low = mask & -mask
        out.append(gi.elements[low.bit_length() - 1])
        mask ^= low
    return frozenset(out)


def has_zero_sum(seq: Sequence, length_set: LengthSet) -> bool:
    """Whether 0 is a sum of some subsequence with permitted length.

    Short-circuits as soon as a zero cell becomes reachable while elements
    are folded in.
    """
    allowed = {l for l in _resolved(seq, length_set) if l <= seq.length}
    if not allowed:
        return False
    lmax = max(allowed)
    gi = _GroupIndex(seq.group)
    layers = [0] * (lmax + 1)
    layers[0] = 1
    done = 0
    for elt, mult in seq.items:
        row = gi.add_row(elt)
        for _ in range(mult):
            for l in range(min(done, lmax - 1), -1, -1):
                if layers[l]:
                    layers[l + 1] |= _shift_mask(layers[l], row)
            done += 1
            if any(layers[l] & 1 for l in allowed if l <= done):
                return True
    return False


def witness_zero_sum(seq: Sequence, length_set: LengthSet) -> Optional[Sequence]:
    """A concrete zero-sum subsequence with permitted length, or None.

    Deterministic: the result is the one whose sorted element list is
    lexicographically least among all qualifying subsequences.
    """
    allowed = sorted(l for l in _resolved(seq, length_set) if l <= seq.length)
    if not allowed:
        return None
    gi = _GroupIndex(seq.group)
    flat = [gi.index(e) for e in seq]  # sorted since items are sorted
    d = len(flat)
    lmax = allowed[-1]
    rows = {i: gi.add_row(gi.elements[i]) for i in set(flat)}
    neg = [gi.index(tuple((-x) % o for x, o in zip(e, seq.group.orders)))
           for e in gi.elements]

    # feas[i][l]: bitmask of sums realizable with exactly l picks from flat[i:]
    feas = [[0] * (lmax + 1) for _ in range(d + 1)]
    feas[d][0] = 1
    for i in range(d - 1, -1, -1):
        row = rows[flat[i]]
        feas[i][0] = 1
        for l in range(1, min(d - i, lmax) + 1):
            feas[i][l] = feas[i + 1][l] | _shift_mask(feas[i + 1][l - 1], row)

    allowed_set = set(allowed)
    chosen = []
    pos, cnt, ssum = 0, 0, 0
    while True:
        if cnt >= 1 and cnt in allowed_set and ssum == 0:
            return Sequence.from_elements(seq.group, (gi.elements[i] for i in chosen))
        found = False
        prev = -1
        for j in range(pos, d):
            x = flat[j]
            if x == prev:
                continue
            prev = x
            new_sum = rows[x][ssum]
            target = neg[new_sum]
            ok = any(
                l - cnt - 1 <= d - j - 1 and feas[j + 1][l - cnt - 1] >> target & 1
                for l in allowed
                if l >= cnt + 1
            )
            if ok:
                chosen.append(x)
                pos, cnt, ssum = j + 1, cnt + 1, new_sum
                found = True
                break
        if not found:
            return None


def is_minimal_zero_sum(seq: Sequence) -> bool:
    """Nonempty, sums to zero, and no proper nonempty subsequence does."""
    if not seq or seq.sum() != tuple([0] * len(seq.group.orders)):
        return False
    if seq.length == 1:
        return True
    return not has_zero_sum(seq, LengthSet.interval(1, seq.length - 1))


BRUTE_GUARD = 20


def brute_sigma_L(seq: Sequence, length_set: LengthSet) -> frozenset:
    """Same contract as sigma_L via explicit enumeration of all 2^|S| subsets.

    Independent oracle: walks every flat subsequence once, carrying partial
    length and sum; no shared code path with the layered table.
    """
    d = seq.length
    if d > BRUTE_GUARD:
        raise GuardError(f"|S| = {d} exceeds brute-force guard {BRUTE_GUARD}")
    allowed = _resolved(seq, length_set)
    group = seq.group
    orders = group.orders
    flat = list(seq)
    out = set()
    zero_elt = tuple([0] * len(orders))

    def walk(i, length, s):
        if i == d:
            if length in allowed:
                out.add(s)
            return
        walk(i + 1, length, s)
        x = flat[i]
        walk(i + 1, length + 1,
             tuple((a + b) % o for a, b, o in zip(s, x, orders)))

    walk(0, 0, zero_elt)
    return frozenset(out)
