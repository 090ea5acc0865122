import random

import pytest

from zerosum.errors import ModeError
from zerosum.groups import GroupSpec, apply_table
from zerosum.sequences import LengthSet, Sequence, powered
from zerosum.symmetry import (
    EquivalenceMode,
    automorphism_tables,
    canonical_form,
    check_mode_legal,
    get_context,
    orbit_of,
)

AUT = EquivalenceMode.AUTOMORPHISM
TRANS = EquivalenceMode.AUTOMORPHISM_TRANSLATION


def rand_seq(g, rnd, max_len=8):
    return Sequence.from_elements(
        g,
        (tuple(rnd.randrange(o) for o in g.orders)
         for _ in range(rnd.randrange(max_len + 1))),
    )


def test_mode_legality():
    g = GroupSpec([2, 2, 4])
    check_mode_legal(TRANS, LengthSet.exact_exponent(), g)
    check_mode_legal(TRANS, LengthSet.explicit([4]), g)
    check_mode_legal(AUT, LengthSet.short(), g)
    with pytest.raises(ModeError):
        check_mode_legal(TRANS, LengthSet.short(), g)
    with pytest.raises(ModeError):
        check_mode_legal(TRANS, LengthSet.any_length(), g)


def test_zero_cubed_is_canonical():
    g = GroupSpec([2, 2, 2])
    s = powered(g, ((0, 0, 0), 3))
    assert canonical_form(s, AUT) == s
    assert canonical_form(s, TRANS) == s
    moved = powered(g, ((1, 1, 0), 3))
    assert canonical_form(moved, TRANS) == s


def test_canonical_form_constant_on_orbits():
    rnd = random.Random(0)
    for orders in ([2, 2, 2], [2, 2, 4]):
        g = GroupSpec(orders)
        for mode in (AUT, TRANS):
            for _ in range(15):
                s = rand_seq(g, rnd, 6)
                c = canonical_form(s, mode)
                assert canonical_form(c, mode) == c  # idempotent
                for t in orbit_of(s, mode):
                    assert canonical_form(t, mode) == c
                # canonical form is the least sorted element list in the orbit
                assert min(orbit_of(s, mode), key=tuple) == c


def test_translation_orbit_covers_all_shifts():
    g = GroupSpec([2, 2, 4])
    rnd = random.Random(1)
    for _ in range(20):
        s = rand_seq(g, rnd, 5)
        orb = orbit_of(s, TRANS)
        h = tuple(rnd.randrange(o) for o in g.orders)
        assert canonical_form(s.translate(h), TRANS) == canonical_form(s, TRANS)
        assert s.translate(h) in orb


def test_automorphism_images_share_canonical_form():
    g = GroupSpec([2, 2, 4])
    tables = automorphism_tables(g)
    rnd = random.Random(2)
    for _ in range(25):
        s = rand_seq(g, rnd, 6)
        t = tables[rnd.randrange(len(tables))]
        mapped = Sequence.from_elements(g, (apply_table(g, t, e) for e in s))
        assert canonical_form(mapped, AUT) == canonical_form(s, AUT)


def test_context_sizes():
    g = GroupSpec([2, 2, 2])
    assert get_context(g, AUT).size == 168
    assert get_context(g, TRANS).size == 168 * 8
    # search order puts the identity first
    ctx = get_context(g, AUT)
    assert ctx.rank_to_lex[0] == 0
