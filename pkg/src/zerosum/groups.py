"""Finite abelian groups presented as direct sums of cyclic groups.

Elements are residue vectors (plain tuples of ints) under a GroupSpec; all
arithmetic reduces componentwise. Everything that enumerates the whole group
is guarded by a cardinality cap (default 256).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Iterator, Optional

from .errors import ArityError, CapExceededError, UnsupportedShapeError

Element = tuple  # residue vector

DEFAULT_ENUMERATION_CAP = 256


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group given as a list of cyclic factor orders."""

    orders: tuple

    def __init__(self, orders: Iterable[int]):
        orders = tuple(int(o) for o in orders)
        if any(o < 2 for o in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    @property
    def cardinality(self) -> int:
        return math.prod(self.orders)

    def __str__(self):
        return "C" + " + C".join(str(o) for o in self.orders) if self.orders else "C1"


def check_element(group: GroupSpec, a: Element) -> None:
    """Raise ArityError unless a has one residue per cyclic factor."""
    if len(a) != len(group.orders):
        raise ArityError(
            f"element {a} has arity {len(a)}, group {group.orders} needs {len(group.orders)}"
        )


def zero(group: GroupSpec) -> Element:
    return (0,) * len(group.orders)


def combine(group: GroupSpec, a: Element, b: Element, k: int = 1) -> Element:
    """Return a + k*b reduced componentwise modulo the factor orders."""
    check_element(group, a)
    check_element(group, b)
    return tuple((x + k * y) % o for x, y, o in zip(a, b, group.orders))


def negate(group: GroupSpec, a: Element) -> Element:
    check_element(group, a)
    return tuple((-x) % o for x, o in zip(a, group.orders))


def scale(group: GroupSpec, k: int, a: Element) -> Element:
    check_element(group, a)
    return tuple((k * x) % o for x, o in zip(a, group.orders))


def order_of(group: GroupSpec, a: Element) -> int:
    """Least k >= 1 with k*a = 0; always divides the exponent."""
    check_element(group, a)
    return math.lcm(*(o // math.gcd(x, o) for x, o in zip(a, group.orders))) if a else 1


def elements(group: GroupSpec, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Element]:
    """All elements in lexicographic residue order."""
    check_cap(group, cap)
    return cartesian(*(range(o) for o in group.orders))


def check_cap(group: GroupSpec, cap: int = DEFAULT_ENUMERATION_CAP) -> None:
    if group.cardinality > cap:
        raise CapExceededError(
            f"|G| = {group.cardinality} exceeds enumeration cap {cap}"
        )


def lex_index(group: GroupSpec, a: Element) -> int:
    """Rank of a in lexicographic residue order (mixed-radix value)."""
    idx = 0
    for x, o in zip(a, group.orders):
        idx = idx * o + x
    return idx


def element_at(group: GroupSpec, idx: int) -> Element:
    out = []
    for o in reversed(group.orders):
        idx, r = divmod(idx, o)
        out.append(r)
    return tuple(reversed(out))


def _prime_factorization(n: int) -> dict:
    factors: dict = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def normalized_orders(orders: Iterable[int]) -> tuple:
    """Invariant factors of the same group, ordered by divisibility (ascending).

    Helper only; GroupSpec keeps whatever presentation it was given.
    """
    primary: dict = {}
    for o in orders:
        for p, e in _prime_factorization(o).items():
            primary.setdefault(p, []).append(p**e)
    for p in primary:
        primary[p].sort(reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for j in range(width):
        factors.append(math.prod(v[j] for v in primary.values() if len(v) > j))
    return tuple(sorted(factors))


@dataclass(frozen=True)
class Basis:
    """An independent generating tuple with its declared factor orders."""

    generators: tuple
    declared_orders: tuple

    def __iter__(self):
        return iter(self.generators)


def _spans_directly(group: GroupSpec, gens, profile) -> bool:
    # independent + generating <=> all prod(profile) coefficient sums distinct
    seen = set()
    for coeffs in cartesian(*(range(o) for o in profile)):
        s = zero(group)
        for c, g in zip(coeffs, gens):
            if c:
                s = combine(group, s, g, c)
        if s in seen:
            return False
        seen.add(s)
    return True


def enumerate_bases(
    group: GroupSpec,
    order_profile: Iterable[int],
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Iterator[Basis]:
    """All ordered independent generating tuples matching the order profile.

    Deterministic: lexicographic on concatenated residue vectors.
    """
    check_cap(group, cap)
    profile = tuple(int(o) for o in order_profile)
    if math.prod(profile) != group.cardinality:
        return
    candidates = []
    for target in profile:
        candidates.append([g for g in elements(group, cap) if order_of(group, g) == target])
    for gens in cartesian(*candidates):
        if _spans_directly(group, gens, profile):
            yield Basis(gens, profile)


def identity_table(group: GroupSpec) -> tuple:
    return tuple(range(group.cardinality))


def enumerate_automorphisms(
    group: GroupSpec, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[tuple]:
    """All automorphisms as permutation tables on lexicographic element indices.

    Identity first, then in the deterministic order of enumerate_bases over
    the group's own order profile. Count equals |Aut(G)|: automorphisms
    correspond bijectively to ordered bases matching the standard profile via
    the images of the unit vectors.
    """
    check_cap(group, cap)
    ident = identity_table(group)
    yield ident
    elts = list(elements(group, cap))
    for basis in enumerate_bases(group, group.orders, cap):
        table = []
        for a in elts:
            img = zero(group)
            for c, g in zip(a, basis.generators):
                if c:
                    img = combine(group, img, g, c)
            table.append(lex_index(group, img))
        table = tuple(table)
        if table != ident:
            yield table


def apply_table(group: GroupSpec, table, a: Element) -> Element:
    """Apply an element-permutation table to a residue vector."""
    return element_at(group, table[lex_index(group, a)])


@lru_cache(maxsize=None)
class GroupIndex:
    """Cached element indexing and per-element addition maps for one group."""

    def __init__(self, group: GroupSpec):
        self.group = group
        self.elements = list(elements(group))
        self.m = len(self.elements)
        self._add_rows: dict = {}

    def index(self, a) -> int:
        return lex_index(self.group, a)

    def add_row(self, x) -> tuple:
        """Index permutation i -> index(element_i + x)."""
        row = self._add_rows.get(x)
        if row is None:
            orders = self.group.orders
            row = tuple(
                self.index(tuple((u + v) % o for u, v, o in zip(e, x, orders)))
                for e in self.elements
            )
            self._add_rows[x] = row
        return row


@dataclass(frozen=True)
class SplitData:
    """A subgroup H with the projection of G onto a quotient presentation."""

    subgroup_elements: frozenset
    projection_table: dict
    quotient_spec: GroupSpec

    def project(self, a: Element) -> Element:
        return self.projection_table[a]


def _is_two_two_even(group: GroupSpec) -> bool:
    return (
        len(group.orders) == 3
        and group.orders[0] == 2
        and group.orders[1] == 2
        and group.orders[2] % 2 == 0
    )


def canonical_split(
    group: GroupSpec,
    subgroup: Optional[Iterable[Element]] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> SplitData:
    """The subgroup/quotient split used throughout.

    For groups of shape [2, 2, 2n] this is the unique cyclic subgroup
    H = {(0,0,2k)} of order n with quotient of shape [2, 2, 2]. For other
    shapes an explicit subgroup must be given and a general split is built.
    """
    check_cap(group, cap)
    if subgroup is None:
        if not _is_two_two_even(group):
            raise UnsupportedShapeError(
                f"no canonical split for {group.orders}; pass a subgroup explicitly"
            )
        n = group.orders[2] // 2
        sub = frozenset((0, 0, 2 * k) for k in range(n))
        quotient = GroupSpec((2, 2, 2))
        table = {a: (a[0], a[1], a[2] % 2) for a in elements(group, cap)}
        return SplitData(sub, table, quotient)
    return _general_split(group, frozenset(subgroup), cap)


def _general_split(group: GroupSpec, sub: frozenset, cap: int) -> SplitData:
    for a in sub:
        check_element(group, a)
    if zero(group) not in sub:
        raise ValueError("subgroup must contain 0")
    for a in sub:
        for b in sub:
            if combine(group, a, b, -1) not in sub:
                raise ValueError("given element set is not closed under subtraction")
    # coset partition, cosets keyed by their minimal element
    coset_of = {}
    cosets = []
    for a in elements(group, cap):
        if a in coset_of:
            continue
        coset = frozenset(combine(group, a, h) for h in sub)
        cosets.append(coset)
        for x in coset:
            coset_of[x] = coset

    def coset_add(c1, c2):
        return coset_of[combine(group, min(c1), min(c2))]

    zero_coset = coset_of[zero(group)]
    gens = _abelian_basis(cosets, coset_add, zero_coset)
    orders = tuple(order for _, order in reversed(gens))  # ascending divisibility
    gen_list = [g for g, _ in reversed(gens)]
    coords_of = {}
    for coeffs in cartesian(*(range(o) for o in orders)):
        c = zero_coset
        for k, g in zip(coeffs, gen_list):
            for _ in range(k):
                c = coset_add(c, g)
        coords_of[c] = coeffs
    if orders:
        quotient = GroupSpec(orders)
        table = {a: coords_of[coset_of[a]] for a in elements(group, cap)}
    else:
        quotient = GroupSpec(())
        table = {a: () for a in elements(group, cap)}
    return SplitData(sub, table, quotient)


def _abelian_basis(items, add, zero_item):
    """Generator chain (g, ord(g)) of a finite abelian group given additively.

    Picks an element of maximal order (this order equals the exponent, so the
    group splits off the cyclic subgroup it generates), recurses on the
    quotient, then lifts each quotient generator to a representative of the
    same order, which exists by the standard splitting argument. Orders come
    out in descending divisibility.
    """
    if len(items) == 1:
        return []

    def order_in(x, addf, zero_i):
        k, y = 1, x
        while y != zero_i:
            y = addf(y, x)
            k += 1
        return k

    best = max(items, key=lambda x: order_in(x, add, zero_item))
    d = order_in(best, add, zero_item)
    cyc = []
    y = zero_item
    for _ in range(d):
        cyc.append(y)
        y = add(y, best)
    cyc_set = set(cyc)

    sub_coset_of = {}
    sub_cosets = []
    for x in items:
        if x in sub_coset_of:
            continue
        coset = frozenset(add(x, c) for c in cyc_set)
        sub_cosets.append(coset)
        for m in coset:
            sub_coset_of[m] = coset

    def sub_add(c1, c2):
        return sub_coset_of[add(next(iter(c1)), next(iter(c2)))]

    inner = _abelian_basis(sub_cosets, sub_add, sub_coset_of[zero_item])
    lifted = [(best, d)]
    for coset_gen, order in inner:
        rep = None
        for x in coset_gen:
            if order_in(x, add, zero_item) == order:
                rep = x
                break
        assert rep is not None, "order-preserving lift must exist"
        lifted.append((rep, order))
    return lifted
