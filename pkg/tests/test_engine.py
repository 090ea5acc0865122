import random
from itertools import combinations_with_replacement

import pytest

from zerosum.engine import (
    brute_sigma_L,
    build_sum_table,
    has_zero_sum,
    is_minimal_zero_sum,
    sigma_L,
    witness_zero_sum,
)
from zerosum.errors import GuardError
from zerosum.groups import GroupSpec, apply_table, elements, zero
from zerosum.sequences import LengthSet, Sequence, powered
from zerosum.symmetry import automorphism_tables

ANY = LengthSet.any_length()
SHORT = LengthSet.short()
EXP = LengthSet.exact_exponent()


def rand_seq(g, rnd, max_len):
    return Sequence.from_elements(
        g,
        (tuple(rnd.randrange(o) for o in g.orders)
         for _ in range(rnd.randrange(max_len + 1))),
    )


def test_sigma_cyclic_eta_forms():
    # over C5: g^{n-2} reaches everything but 0 and -g; g^{n-3}(2g) all but 0
    c5 = GroupSpec([5])
    assert sigma_L(powered(c5, ((1,), 3)), ANY) == {(1,), (2,), (3,)}
    assert sigma_L(powered(c5, ((1,), 2), ((2,), 1)), ANY) == \
        {(1,), (2,), (3,), (4,)}


def test_sigma_cyclic_egz_form():
    # over C4: g^{n-1} h^{n-2} with ord(g-h)=n misses exactly -g-h at length n-2
    c4 = GroupSpec([4])
    s = powered(c4, ((0,), 3), ((1,), 2))
    assert sigma_L(s, LengthSet.explicit([2])) == {(0,), (1,), (2,)}


def test_sum_table_shape():
    g = GroupSpec([2, 2])
    t = build_sum_table(powered(g, ((1, 0), 2), ((0, 1), 1)), 2)
    assert t.reachable(0, (0, 0))
    assert not t.reachable(0, (1, 0))
    assert t.reachable(1, (1, 0)) and t.reachable(1, (0, 1))
    assert t.reachable(2, (0, 0)) and t.reachable(2, (1, 1))


def test_sum_table_monotone_under_appending():
    g = GroupSpec([2, 4])
    rnd = random.Random(9)
    for _ in range(30):
        s = rand_seq(g, rnd, 8)
        extra = tuple(rnd.randrange(o) for o in g.orders)
        bigger = s * Sequence.from_elements(g, [extra])
        t1 = build_sum_table(s, 4)
        t2 = build_sum_table(bigger, 4)
        for l in range(5):
            assert t1.layers[l] & t2.layers[l] == t1.layers[l]


def test_has_zero_sum_basics():
    g = GroupSpec([2, 2, 4])
    assert has_zero_sum(powered(g, (zero(g), 1)), SHORT)
    assert not has_zero_sum(Sequence.empty(g), SHORT)
    assert has_zero_sum(powered(g, (((0, 0, 1)), 4)), EXP)
    assert not has_zero_sum(powered(g, (((0, 0, 1)), 3)), EXP)


def test_eta1_family_instance_has_no_short_zero_sum():
    # n=3, v=0, a=2 over [2,2,6]: f3^5 (f3+f2) f2 (2f3+f1) (5f3+f2+f1)
    g = GroupSpec([2, 2, 6])
    s = Sequence(g, [((0, 0, 1), 5), ((0, 1, 1), 1), ((0, 1, 0), 1),
                     ((1, 0, 2), 1), ((1, 1, 5), 1)])
    assert s.length == 9
    assert not has_zero_sum(s, SHORT)


def test_witness_examples():
    c4 = GroupSpec([4])
    w = witness_zero_sum(powered(c4, ((1,), 4)), ANY)
    assert w == powered(c4, ((1,), 4))

    g = GroupSpec([2, 2, 2])
    s = Sequence.from_elements(
        g, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    w = witness_zero_sum(s, LengthSet.explicit([4]))
    assert w == Sequence.from_elements(
        g, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])

    assert witness_zero_sum(powered(c4, ((1,), 2)), ANY) is None


def test_witness_contract_randomized():
    rnd = random.Random(11)
    g = GroupSpec([2, 4])
    for _ in range(200):
        s = rand_seq(g, rnd, 8)
        ls = rnd.choice([ANY, SHORT, EXP, LengthSet.interval(2, 3)])
        w = witness_zero_sum(s, ls)
        if w is None:
            assert not has_zero_sum(s, ls)
        else:
            assert w.divides(s)
            assert w.sum() == zero(g)
            assert w.length in ls.resolve(g, s.length)


def test_minimal_zero_sum():
    g = GroupSpec([2, 2, 4])
    assert is_minimal_zero_sum(powered(g, (zero(g), 1)))
    assert not is_minimal_zero_sum(powered(g, (zero(g), 2)))
    assert not is_minimal_zero_sum(Sequence.empty(g))
    # D1 instance at n=2: f3^3 (f3+f2) (f3+f1) (-f3+f2+f1), length 6 = D(G)
    s = Sequence(g, [((0, 0, 1), 3), ((0, 1, 1), 1), ((1, 0, 1), 1),
                     ((1, 1, 3), 1)])
    assert s.length == 6
    assert is_minimal_zero_sum(s)
    # g (-g) h (-h) with independent g, h of order >= 3 splits
    c99 = GroupSpec([9, 9])
    split = Sequence.from_elements(c99, [(1, 0), (8, 0), (0, 1), (0, 8)])
    assert not is_minimal_zero_sum(split)


def test_brute_guard():
    g = GroupSpec([2])
    s = powered(g, ((1,), 21))
    with pytest.raises(GuardError):
        brute_sigma_L(s, ANY)


def test_brute_edges():
    g = GroupSpec([2])
    assert brute_sigma_L(Sequence.empty(g), ANY) == frozenset()
    assert brute_sigma_L(powered(g, ((1,), 1)), ANY) == {(1,)}


def test_oracle_exhaustive_small():
    for orders, max_len in [([2, 2], 5), ([5], 5), ([2, 4], 4)]:
        g = GroupSpec(orders)
        elts = sorted(elements(g))
        for length in range(max_len + 1):
            for combo in combinations_with_replacement(elts, length):
                s = Sequence.from_elements(g, combo)
                for ls in (ANY, SHORT, EXP):
                    assert sigma_L(s, ls) == brute_sigma_L(s, ls)


def test_oracle_randomized():
    rnd = random.Random(1234)
    pool = [[6], [2, 4], [3, 3], [2, 2, 2], [12], [2, 2, 4], [5, 5]]
    for _ in range(300):
        g = GroupSpec(rnd.choice(pool))
        s = rand_seq(g, rnd, 12)
        pick = rnd.randrange(5)
        if pick < 3:
            ls = (ANY, SHORT, EXP)[pick]
        elif pick == 3:
            lo = rnd.randrange(1, 5)
            ls = LengthSet.interval(lo, lo + rnd.randrange(5))
        else:
            ls = LengthSet.explicit(rnd.sample(range(1, 14), rnd.randrange(1, 4)))
        left = sigma_L(s, ls)
        assert left == brute_sigma_L(s, ls)
        assert has_zero_sum(s, ls) == (zero(g) in left)


def test_sigma_monotone_in_lengths():
    rnd = random.Random(5)
    g = GroupSpec([2, 2, 4])
    for _ in range(100):
        s = rand_seq(g, rnd, 10)
        assert sigma_L(s, LengthSet.interval(1, 2)) <= sigma_L(s, LengthSet.interval(1, 4))
        assert sigma_L(s, SHORT) <= sigma_L(s, ANY)


def test_sigma_automorphism_equivariance():
    g = GroupSpec([2, 2, 4])
    tables = automorphism_tables(g)
    rnd = random.Random(6)
    for _ in range(40):
        s = rand_seq(g, rnd, 8)
        t = tables[rnd.randrange(len(tables))]
        mapped = Sequence.from_elements(g, (apply_table(g, t, e) for e in s))
        for ls in (ANY, SHORT, EXP):
            expect = {apply_table(g, t, e) for e in sigma_L(s, ls)}
            assert sigma_L(mapped, ls) == expect


def test_sigma_translation_law_exact_length():
    # Sigma_k(h+S) = k*h + Sigma_k(S); at k = exp the shift vanishes
    g = GroupSpec([2, 2, 4])
    rnd = random.Random(7)
    for _ in range(60):
        s = rand_seq(g, rnd, 9)
        h = tuple(rnd.randrange(o) for o in g.orders)
        k = rnd.randrange(1, 6)
        shift = tuple((k * x) % o for x, o in zip(h, g.orders))
        expect = {
            tuple((a + b) % o for a, b, o in zip(e, shift, g.orders))
            for e in sigma_L(s, LengthSet.explicit([k]))
        }
        assert sigma_L(s.translate(h), LengthSet.explicit([k])) == expect
        assert has_zero_sum(s.translate(h), EXP) == has_zero_sum(s, EXP)
