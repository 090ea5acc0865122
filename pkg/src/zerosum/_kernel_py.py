"""Pure-Python search kernels.

Mirrors of the compiled routines in _speedups.pyx; semantics must stay
identical. Sequences are non-decreasing byte strings of element indices,
permutations are byte strings mapping index -> index, and the prepared
permutation set exposes .rows (list of bytes) and .blob/.m/.P for the
compiled twin.

Every routine compares sorted permutation images against the sequence in
plain lexicographic byte order, with a cheap first-position filter: the
first byte of a sorted image is the minimum of the row over the support.
"""

COMPILED = False


def is_lex_min(seq, support, perms):
    """True iff no permutation image of seq sorts strictly below seq."""
    s0 = seq[0]
    for row in perms.rows:
        mn = min(map(row.__getitem__, support))
        if mn > s0:
            continue
        if mn < s0:
            return False
        img = bytes(sorted(map(row.__getitem__, seq)))
        if img < seq:
            return False
    return True


def min_scan_ok(seq, support, perms):
    """First-position test only: no row maps the support below seq[0]."""
    s0 = seq[0]
    for row in perms.rows:
        if min(map(row.__getitem__, support)) < s0:
            return False
    return True


def compare_rows(seq, perms, row_indices):
    """Full image comparison against a subset of rows.

    Returns (ok, ties): ok is False as soon as some image sorts below seq;
    ties lists the checked rows whose image equals seq exactly.
    """
    ties = []
    rows = perms.rows
    for i in row_indices:
        img = bytes(sorted(map(rows[i].__getitem__, seq)))
        if img < seq:
            return False, ties
        if img == seq:
            ties.append(i)
    return True, ties


def collect_tight(seq, support, perms):
    """Exact minimality check that also collects the rows fixing seq."""
    s0 = seq[0]
    ties = []
    for i, row in enumerate(perms.rows):
        mn = min(map(row.__getitem__, support))
        if mn > s0:
            continue
        if mn < s0:
            return False, []
        img = bytes(sorted(map(row.__getitem__, seq)))
        if img < seq:
            return False, []
        if img == seq:
            ties.append(i)
    return True, ties


def lex_min_image(seq, perms):
    """Lexicographically least sorted image of seq over all rows."""
    best = None
    b0 = 256
    support = bytes(set(seq))
    for row in perms.rows:
        if min(map(row.__getitem__, support)) > b0:
            continue
        img = bytes(sorted(map(row.__getitem__, seq)))
        if best is None or img < best:
            best = img
            b0 = best[0]
    return best
