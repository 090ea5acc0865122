import random

import pytest

from zerosum.kernel import BACKEND, PermSet, backends


def random_case(rnd, m, num_perms, length):
    rows = []
    for _ in range(num_perms):
        perm = list(range(m))
        rnd.shuffle(perm)
        rows.append(bytes(perm))
    seq = bytes(sorted(rnd.randrange(m) for _ in range(length)))
    support = bytes(dict.fromkeys(seq))
    return seq, support, PermSet(rows)


def reference_is_min(seq, perms):
    return all(bytes(sorted(row[i] for i in seq)) >= seq for row in perms.rows)


def reference_min_image(seq, perms):
    return min(bytes(sorted(row[i] for i in seq)) for row in perms.rows)


@pytest.mark.parametrize("name", sorted(backends()))
def test_backend_against_reference(name):
    impl = backends()[name]
    rnd = random.Random(99)
    for _ in range(300):
        m = rnd.choice([4, 8, 16, 24])
        seq, support, perms = random_case(rnd, m, rnd.randrange(1, 40), rnd.randrange(1, 12))
        assert impl.is_lex_min(seq, support, perms) == reference_is_min(seq, perms)
        assert impl.lex_min_image(seq, perms) == reference_min_image(seq, perms)


@pytest.mark.parametrize("name", sorted(backends()))
def test_backend_partial_primitives(name):
    impl = backends()[name]
    rnd = random.Random(7)
    for _ in range(200):
        m = rnd.choice([6, 12, 24])
        seq, support, perms = random_case(rnd, m, rnd.randrange(1, 30), rnd.randrange(1, 10))
        ok, ties = impl.collect_tight(seq, support, perms)
        assert ok == reference_is_min(seq, perms)
        if ok:
            expect_ties = [
                i for i, row in enumerate(perms.rows)
                if bytes(sorted(row[j] for j in seq)) == seq
            ]
            assert ties == expect_ties
            ok2, ties2 = impl.compare_rows(seq, perms, range(perms.P))
            assert ok2 and ties2 == expect_ties
        if not impl.min_scan_ok(seq, support, perms):
            assert not ok  # first-position reject implies a smaller image


def test_backends_agree_pairwise():
    impls = backends()
    if len(impls) < 2:
        pytest.skip("compiled kernel not built")
    rnd = random.Random(3)
    for _ in range(200):
        m = rnd.choice([8, 16, 32])
        seq, support, perms = random_case(rnd, m, rnd.randrange(1, 50), rnd.randrange(1, 16))
        results = {
            name: (impl.is_lex_min(seq, support, perms),
                   impl.lex_min_image(seq, perms),
                   impl.collect_tight(seq, support, perms))
            for name, impl in impls.items()
        }
        assert len(set(map(repr, results.values()))) == 1, results


def test_permset_validation():
    with pytest.raises(ValueError):
        PermSet([])
    with pytest.raises(ValueError):
        PermSet([bytes([0, 1]), bytes([0])])
    ps = PermSet([bytes([1, 0]), bytes([0, 1])])
    assert ps.P == 2 and ps.m == 2 and len(ps.blob) == 4


def test_backend_name_exported():
    assert BACKEND in ("compiled", "python")
