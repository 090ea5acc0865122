"""Kernel backend selection: compiled extension if present, else pure Python.

Set ZS_PURE_PYTHON=1 to force the fallback (useful for the benchmark and for
cross-checking the two implementations).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("ZS_PURE_PYTHON"):
    _impl = _kernel_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND = "compiled" if _impl.COMPILED else "python"

is_lex_min = _impl.is_lex_min
min_scan_ok = _impl.min_scan_ok
compare_rows = _impl.compare_rows
collect_tight = _impl.collect_tight
lex_min_image = _impl.lex_min_image


class PermSet:
    """Prepared permutation tables: list of byte rows plus one packed blob."""

    __slots__ = ("rows", "blob", "m", "P")

    def __init__(self, rows):
        rows = list(rows)
        if not rows:
            raise ValueError("need at least one permutation row")
        self.rows = rows
        self.m = len(rows[0])
        if any(len(r) != self.m for r in rows):
            raise ValueError("permutation rows must have equal length")
        self.P = len(rows)
        self.blob = b"".join(rows)


def backends():
    """Both kernel implementations, for benchmarks and agreement tests."""
    impls = {"python": _kernel_py}
    try:
        from . import _speedups
        impls["compiled"] = _speedups
    except ImportError:
        pass
    return impls
