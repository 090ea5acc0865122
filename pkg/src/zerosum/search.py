"""Exact constants and extremal sequence enumeration by orderly search.

Avoiding sequences are grown one element at a time in non-decreasing order
of a fixed element key (element order, then residues). Both filters applied
at every node are hereditary-safe:

 * avoidance - removing elements never creates zero-sum subsequences, so a
   violating node cannot have avoiding extensions;
 * canonical pruning - if some symmetry image of a prefix sorts strictly
   below the prefix, the same is true for every non-decreasing extension
   (merging the image of the appended suffix only lowers earlier positions),
   so non-minimal prefixes cannot lead to minimal leaves.

Full pruning tests minimality against every table at every node and the
surviving tree holds exactly one representative per orbit. Partial pruning
(for larger symmetry groups) uses a first-position scan over all tables plus
exact comparison against the tables that still fixed the parent; it can keep
some duplicate orbits, which are removed when collected nodes are
canonicalized, so results are identical.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Set

from . import kernel
from .errors import BudgetExceededError
from .groups import GroupSpec, negate
from .sequences import LengthSet, Sequence
from .symmetry import (
    EquivalenceMode,
    SymmetryContext,
    canonical_form,
    check_mode_legal,
    get_context,
)

DEFAULT_NODE_BUDGET = 20_000_000


def node_budget(budget: Optional[int] = None) -> int:
    """Explicit budget, else ZS_NODE_BUDGET from the environment, else default."""
    if budget is not None:
        return budget
    env = os.environ.get("ZS_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


def _rank_add_rows(ctx: SymmetryContext) -> list:
    """Addition tables in search-rank index space, cached on the context."""
    rows = getattr(ctx, "_rank_add_rows", None)
    if rows is None:
        gi = ctx.gi
        rows = []
        for r in range(ctx.m):
            lex_row = gi.add_row(gi.elements[ctx.rank_to_lex[r]])
            rows.append(tuple(ctx.lex_to_rank[lex_row[ctx.rank_to_lex[q]]]
                              for q in range(ctx.m)))
        ctx._rank_add_rows = rows
    return rows


def _shift(mask: int, row) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


class _AnyAvoid:
    """Zero-sum-freeness tracker: one bitmask of nonempty subsequence sums."""

    def __init__(self, ctx):
        self.rows = _rank_add_rows(ctx)

    def initial(self):
        return 0

    def extend(self, state, e, depth):
        row = self.rows[e]
        new = state | _shift(state | 1, row)  # bit 0 is the identity element
        return new, not new & 1


class _LayeredAvoid:
    """Length-layered tracker for bounded length sets."""

    def __init__(self, ctx, allowed: frozenset):
        self.rows = _rank_add_rows(ctx)
        self.allowed = allowed
        self.lmax = max(allowed)

    def initial(self):
        return (1,) + (0,) * self.lmax

    def extend(self, state, e, depth):
        row = self.rows[e]
        layers = list(state)
        for l in range(min(depth - 1, self.lmax - 1), -1, -1):
            if layers[l]:
                layers[l + 1] |= _shift(layers[l], row)
        ok = not any(layers[l] & 1 for l in self.allowed if l <= depth)
        return tuple(layers), ok


def _make_avoid(ctx, length_set: LengthSet):
    if length_set.kind == "any":
        return _AnyAvoid(ctx)
    if length_set.kind == "short":
        allowed = frozenset(range(1, ctx.group.exponent + 1))
    elif length_set.kind == "exp":
        allowed = frozenset((ctx.group.exponent,))
    elif length_set.kind == "explicit":
        allowed = frozenset(length_set.values)
    elif length_set.kind == "interval":
        allowed = frozenset(range(length_set.lo, length_set.hi + 1))
    else:
        raise ValueError(f"unsupported length set kind {length_set.kind!r}")
    if not allowed:
        raise ValueError("length set resolves to no lengths")
    return _LayeredAvoid(ctx, allowed)


class OrderlySearch:
    """Resumable DFS over canonical avoiding sequences.

    collect: depths at which one representative per orbit is recorded; None
    records adaptively at the deepest level reached. depth_cap bounds the
    tree. prefix starts the walk inside one subtree (used by parallel runs).
    """

    def __init__(self, group: GroupSpec, length_set: LengthSet,
                 mode: EquivalenceMode = EquivalenceMode.AUTOMORPHISM,
                 prune: Optional[str] = None, budget: Optional[int] = None,
                 collect: Optional[Iterable[int]] = None,
                 depth_cap: Optional[int] = None,
                 prefix: bytes = b"", raw_nodes_at: Optional[int] = None):
        check_mode_legal(mode, length_set, group)
        self.group = group
        self.length_set = length_set
        self.mode = mode
        self.ctx = get_context(group, mode)
        if prune is None:
            prune = "full" if group.cardinality <= 16 else "partial"
        if prune not in ("full", "partial"):
            raise ValueError(f"unknown prune mode {prune!r}")
        self.prune = prune
        self.budget = node_budget(budget)
        self.collect_depths = None if collect is None else set(collect)
        self.depth_cap = depth_cap
        self.raw_nodes_at = raw_nodes_at
        self.raw_nodes: List[bytes] = []

        self.avoid = _make_avoid(self.ctx, length_set)
        self.node_count = 0
        self.nodes_by_depth: Dict[int, int] = {}
        self.max_len = len(prefix)
        self.collected: Dict[int, Set[bytes]] = {}
        self.max_set: Set[bytes] = set()
        self.complete = False

        frame = self._prefix_frame(prefix)
        self._frames = [frame] if frame is not None else []

    def _prefix_frame(self, prefix: bytes):
        dp = self.avoid.initial()
        for depth, e in enumerate(prefix, start=1):
            dp, ok = self.avoid.extend(dp, e, depth)
            assert ok, "prefix must be avoiding"
        tight = None
        if self.prune == "partial" and prefix:
            support = bytes(dict.fromkeys(prefix))
            ok, tight = kernel.collect_tight(prefix, support, self.ctx.perms_search)
            if not ok:
                # a duplicate prefix that slipped past partial pruning in the
                # splitting pass; its extensions are all non-canonical, and
                # the canonical twin's subtree is someone else's task
                return None
        next_e = prefix[-1] if prefix else 0
        return [prefix, dp, tight, next_e]

    # --- recording -------------------------------------------------------

    def _canonical_key(self, seq: bytes) -> bytes:
        if self.prune == "full":
            return seq  # node is already the orbit minimum in search order
        return kernel.lex_min_image(seq, self.ctx.perms_search)

    def _record(self, seq: bytes) -> None:
        depth = len(seq)
        self.nodes_by_depth[depth] = self.nodes_by_depth.get(depth, 0) + 1
        if depth > self.max_len:
            self.max_len = depth
            self.max_set = {self._canonical_key(seq)}
        elif depth == self.max_len:
            self.max_set.add(self._canonical_key(seq))
        if self.collect_depths is not None and depth in self.collect_depths:
            self.collected.setdefault(depth, set()).add(self._canonical_key(seq))
        if self.raw_nodes_at is not None and depth == self.raw_nodes_at:
            self.raw_nodes.append(seq)

    # --- the walk --------------------------------------------------------

    def run(self) -> "OrderlySearch":
        frames = self._frames
        m = self.ctx.m
        perms = self.ctx.perms_search
        full = self.prune == "full"
        while frames:
            frame = frames[-1]
            seq, dp, tight, e = frame
            depth = len(seq) + 1
            pushed = False
            if self.depth_cap is None or depth <= self.depth_cap:
                while e < m:
                    cand = seq + bytes((e,))
                    dp2, ok = self.avoid.extend(dp, e, depth)
                    if ok:
                        support = bytes(dict.fromkeys(cand))
                        if full:
                            accept = kernel.is_lex_min(cand, support, perms)
                            new_tight = None
                        elif tight is None:
                            accept, new_tight = kernel.collect_tight(
                                cand, support, perms)
                        else:
                            accept = kernel.min_scan_ok(cand, support, perms)
                            if accept:
                                accept, new_tight = kernel.compare_rows(
                                    cand, perms, tight)
                        if accept:
                            frame[3] = e + 1
                            frames.append([cand, dp2, new_tight, e])
                            self.node_count += 1
                            self._record(cand)
                            pushed = True
                            if self.node_count >= self.budget:
                                raise BudgetExceededError(
                                    f"node budget {self.budget} exhausted "
                                    f"(deepest avoiding length so far: {self.max_len})",
                                    search=self,
                                )
                            break
                    e += 1
            if not pushed:
                frames.pop()
        self.complete = True
        return self

    def resume(self, extra_budget: int) -> "OrderlySearch":
        self.budget += extra_budget
        return self.run()

    # --- results ---------------------------------------------------------

    def _keys_to_sequences(self, keys: Iterable[bytes]) -> List[Sequence]:
        out = [
            canonical_form(self.ctx.rank_bytes_to_seq(k), self.mode)
            for k in keys
        ]
        return sorted(out, key=lambda s: s.items)

    def sequences_at(self, depth: int) -> List[Sequence]:
        if depth == self.max_len and self.collect_depths is None:
            return self._keys_to_sequences(self.max_set)
        return self._keys_to_sequences(self.collected.get(depth, set()))


@dataclass
class ConstantResult:
    """Computed value of a zero-sum constant with its search evidence."""

    group: GroupSpec
    length_set: LengthSet
    mode: EquivalenceMode
    value: int
    extremal_count_up_to_symmetry: int
    certificate: Optional[Sequence]
    node_count: int
    wall_time: float
    complete: bool = True
    extremal_classes: Optional[List[Sequence]] = field(default=None, repr=False)
    max_minimal_zero_sum_length: Optional[int] = None


def _merge_outcomes(parent: OrderlySearch, results) -> tuple:
    """Fold worker results (max_len, node_count, max_set, collected) together."""
    max_len = parent.max_len
    for r in results:
        max_len = max(max_len, r[0])
    node_count = parent.node_count + sum(r[1] for r in results)
    max_set = set(parent.max_set) if parent.max_len == max_len else set()
    for r in results:
        if r[0] == max_len:
            max_set |= r[2]
    collected: Dict[int, Set[bytes]] = {
        d: set(v) for d, v in parent.collected.items()
    }
    for r in results:
        for d, v in r[3].items():
            collected.setdefault(d, set()).update(v)
    return max_len, node_count, max_set, collected


def _subtree_worker(payload):
    (group, length_set, mode, prune, prefix, depth_cap, collect, budget) = payload
    search = OrderlySearch(group, length_set, mode, prune=prune, budget=budget,
                           collect=collect, depth_cap=depth_cap, prefix=prefix)
    try:
        search.run()
        complete = True
    except BudgetExceededError:
        complete = False
    return (search.max_len, search.node_count, search.max_set,
            search.collected, complete)


def _run_search(group: GroupSpec, length_set: LengthSet, mode: EquivalenceMode,
                prune: Optional[str], budget: Optional[int],
                collect: Optional[Iterable[int]], depth_cap: Optional[int],
                jobs: int) -> OrderlySearch:
    """Run the search, optionally fanning out depth-2 subtrees to processes.

    With jobs > 1 each subtree task gets the full node budget; counts are
    summed for reporting, so the global budget is only approximate there.
    """
    if jobs <= 1:
        return OrderlySearch(group, length_set, mode, prune=prune,
                             budget=budget, collect=collect,
                             depth_cap=depth_cap).run()

    split = 2 if depth_cap is None else min(2, depth_cap)
    parent = OrderlySearch(group, length_set, mode, prune=prune, budget=budget,
                           collect=collect, depth_cap=split,
                           raw_nodes_at=split)
    parent.run()
    collect_set = None if collect is None else set(collect)
    payloads = [
        (group, length_set, mode, prune, prefix, depth_cap, collect_set, budget)
        for prefix in parent.raw_nodes
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_subtree_worker, payloads))
    max_len, node_count, max_set, collected = _merge_outcomes(parent, results)
    parent.max_len = max_len
    parent.node_count = node_count
    parent.max_set = max_set
    parent.collected = collected
    parent.depth_cap = depth_cap
    if not all(r[4] for r in results):
        raise BudgetExceededError(
            f"node budget exhausted in parallel subtrees "
            f"(deepest avoiding length so far: {max_len})",
            search=parent,
        )
    return parent


def compute_s_L(group: GroupSpec, length_set: LengthSet,
                mode: EquivalenceMode = EquivalenceMode.AUTOMORPHISM,
                prune: Optional[str] = None, budget: Optional[int] = None,
                jobs: int = 1, keep_classes: bool = True) -> ConstantResult:
    """Exact s_L(G) by exhaustive canonical extension search.

    The returned value is max avoiding length + 1: the search proves no
    avoiding sequence of the returned length exists. Raises
    BudgetExceededError (carrying the best lower bound) when the node budget
    runs out before exhaustion.
    """
    start = time.monotonic()
    search = _run_search(group, length_set, mode, prune, budget, None, None, jobs)
    classes = search._keys_to_sequences(search.max_set)
    return ConstantResult(
        group=group,
        length_set=length_set,
        mode=mode,
        value=search.max_len + 1,
        extremal_count_up_to_symmetry=len(classes),
        certificate=classes[0] if classes else None,
        node_count=search.node_count,
        wall_time=time.monotonic() - start,
        complete=search.complete,
        extremal_classes=classes if keep_classes else None,
    )


@lru_cache(maxsize=None)
def constant_value(group: GroupSpec, length_set: LengthSet,
                   mode: EquivalenceMode = EquivalenceMode.AUTOMORPHISM) -> int:
    """Cached s_L(G) value for predicates that need a constant repeatedly."""
    return compute_s_L(group, length_set, mode, keep_classes=False).value


def davenport_constant(group: GroupSpec,
                       prune: Optional[str] = None, budget: Optional[int] = None,
                       jobs: int = 1) -> ConstantResult:
    """D(G) = s_L(G) for unrestricted lengths, cross-checked against the
    maximal length of a minimal zero-sum sequence."""
    from .engine import is_minimal_zero_sum

    result = compute_s_L(group, LengthSet.any_length(),
                         EquivalenceMode.AUTOMORPHISM, prune, budget, jobs)
    completions = enumerate_max_minimal_zero_sum(group, result=result)
    if not completions:
        raise AssertionError("no maximal minimal zero-sum sequences found")
    if not all(is_minimal_zero_sum(s) and s.length == result.value
               for s in completions):
        raise AssertionError(
            "maximal minimal zero-sum length disagrees with the Davenport constant"
        )
    result.max_minimal_zero_sum_length = result.value
    return result


def enumerate_extremal(group: GroupSpec, length_set: LengthSet,
                       mode: EquivalenceMode = EquivalenceMode.AUTOMORPHISM,
                       prune: Optional[str] = None, budget: Optional[int] = None,
                       jobs: int = 1,
                       result: Optional[ConstantResult] = None) -> List[Sequence]:
    """One canonical representative per class of longest avoiding sequences."""
    if result is None:
        result = compute_s_L(group, length_set, mode, prune, budget, jobs)
    return list(result.extremal_classes or [])


def enumerate_avoiding(group: GroupSpec, length_set: LengthSet, length: int,
                       mode: EquivalenceMode = EquivalenceMode.AUTOMORPHISM,
                       prune: Optional[str] = None, budget: Optional[int] = None,
                       jobs: int = 1) -> List[Sequence]:
    """One canonical representative per class of avoiding sequences of the
    given length (not necessarily extremal)."""
    search = _run_search(group, length_set, mode, prune, budget,
                         collect=[length], depth_cap=length, jobs=jobs)
    return search.sequences_at(length)


def enumerate_max_minimal_zero_sum(group: GroupSpec,
                                   prune: Optional[str] = None,
                                   budget: Optional[int] = None, jobs: int = 1,
                                   result: Optional[ConstantResult] = None
                                   ) -> List[Sequence]:
    """Canonical representatives of minimal zero-sum sequences of length D(G).

    Every such sequence is a zero-sum-free sequence of length D(G)-1 closed
    off by the negated sum, so the classes are the canonicalized completions
    of the extremal zero-sum-free classes.
    """
    if result is None:
        result = compute_s_L(group, LengthSet.any_length(),
                             EquivalenceMode.AUTOMORPHISM, prune, budget, jobs)
    seen = set()
    out = []
    for s in result.extremal_classes or []:
        completed = s * Sequence.from_elements(group, [negate(group, s.sum())])
        canon = canonical_form(completed, EquivalenceMode.AUTOMORPHISM)
        if canon.items not in seen:
            seen.add(canon.items)
            out.append(canon)
    return sorted(out, key=lambda s: s.items)
