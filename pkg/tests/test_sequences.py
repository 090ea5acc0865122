import random

import pytest

from zerosum.errors import NonDivisorError
from zerosum.groups import GroupSpec, elements, negate, zero
from zerosum.sequences import LengthSet, Sequence, powered, resolve_lengths


def rand_seq(g, rnd, max_len=10):
    return Sequence.from_elements(
        g,
        (tuple(rnd.randrange(o) for o in g.orders)
         for _ in range(rnd.randrange(max_len + 1))),
    )


def test_stats_examples():
    c5 = GroupSpec([5])
    s = powered(c5, ((1,), 4))
    st = s.stats()
    assert (st.length, st.sum, st.height) == (4, (4,), 4)
    assert st.support == {(1,)} and not st.squarefree

    empty = Sequence.empty(c5)
    st = empty.stats()
    assert (st.length, st.sum, st.height, st.support, st.squarefree) == (
        0, (0,), 0, frozenset(), True)

    g = GroupSpec([2, 2, 2])
    all_nonzero = Sequence.from_elements(
        g, (e for e in elements(g) if e != (0, 0, 0)))
    st = all_nonzero.stats()
    assert (st.length, st.sum, st.height, st.squarefree) == (7, (0, 0, 0), 1, True)


def test_translate_laws():
    g = GroupSpec([2, 2, 4])
    rnd = random.Random(0)
    for _ in range(50):
        s = rand_seq(g, rnd)
        h = tuple(rnd.randrange(o) for o in g.orders)
        t = s.translate(h)
        assert t.length == s.length
        assert t.translate(negate(g, h)) == s
        # sum law: sum(h+S) = sum(S) + |S| h
        expect = s.sum()
        for _ in range(s.length):
            expect = tuple((a + b) % o for a, b, o in zip(expect, h, g.orders))
        assert t.sum() == expect
    assert powered(g, (zero(g), 3)).translate((1, 0, 1)) == powered(g, ((1, 0, 1), 3))
    s = rand_seq(g, rnd)
    assert s.translate(zero(g)) == s


def test_product_and_divide():
    g = GroupSpec([4])
    s = powered(g, ((1,), 5))
    t = powered(g, ((1,), 2))
    assert s.divide(t) == powered(g, ((1,), 3))
    assert s.divide(s) == Sequence.empty(g)
    with pytest.raises(NonDivisorError):
        t.divide(s)
    rnd = random.Random(1)
    for _ in range(50):
        a, b = rand_seq(g, rnd), rand_seq(g, rnd)
        prod = a * b
        assert prod.length == a.length + b.length
        assert prod.sum() == tuple(
            (x + y) % o for x, y, o in zip(a.sum(), b.sum(), g.orders))
        assert prod.divide(b) == a


def test_structural_equality_any_insertion_order():
    g = GroupSpec([2, 2, 4])
    elts = [(1, 0, 0), (0, 0, 3), (1, 0, 0), (0, 1, 2)]
    rnd = random.Random(2)
    base = Sequence.from_elements(g, elts)
    for _ in range(10):
        shuffled = elts[:]
        rnd.shuffle(shuffled)
        assert Sequence.from_elements(g, shuffled) == base
        assert hash(Sequence.from_elements(g, shuffled)) == hash(base)


def test_json_roundtrip_bit_exact():
    g = GroupSpec([2, 2, 4])
    s = Sequence(g, [((0, 0, 1), 3), ((1, 1, 0), 2)])
    text = s.to_json()
    assert text == '{"group":[2,2,4],"elements":[[[0,0,1],3],[[1,1,0],2]]}'
    assert Sequence.from_json(text) == s
    assert Sequence.from_json(text).to_json() == text
    rnd = random.Random(3)
    for _ in range(50):
        s = rand_seq(g, rnd)
        assert Sequence.from_json(s.to_json()) == s
        assert Sequence.from_json(s.to_json()).to_json() == s.to_json()


def test_resolve_lengths_examples():
    assert resolve_lengths(LengthSet.short(), GroupSpec([2, 2, 4]), 10) == \
        frozenset({1, 2, 3, 4})
    assert resolve_lengths(LengthSet.exact_exponent(), GroupSpec([2, 2, 6]), 14) == \
        frozenset({6})
    assert resolve_lengths(LengthSet.any_length(), GroupSpec([5]), 3) == \
        frozenset({1, 2, 3})
    assert resolve_lengths(LengthSet.explicit([2, 5, 9]), GroupSpec([5]), 6) == \
        frozenset({2, 5})
    assert resolve_lengths(LengthSet.interval(1, 3), GroupSpec([5]), 2) == \
        frozenset({1, 2})


def test_length_set_parse():
    assert LengthSet.parse("short") == LengthSet.short()
    assert LengthSet.parse("exp") == LengthSet.exact_exponent()
    assert LengthSet.parse("any") == LengthSet.any_length()
    assert LengthSet.parse("1..3") == LengthSet.interval(1, 3)
    assert LengthSet.parse("4,2") == LengthSet.explicit((2, 4))
    with pytest.raises(ValueError):
        LengthSet.parse("0..3")


def test_exact_exponent_detection():
    g = GroupSpec([2, 2, 4])
    assert LengthSet.exact_exponent().is_exact_exponent(g)
    assert LengthSet.explicit([4]).is_exact_exponent(g)
    assert LengthSet.interval(4, 4).is_exact_exponent(g)
    assert not LengthSet.short().is_exact_exponent(g)
    assert not LengthSet.explicit([4, 5]).is_exact_exponent(g)
