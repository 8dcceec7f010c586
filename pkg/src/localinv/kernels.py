"""Hot loops: contraction sums and fraction-free integer elimination.

Two interchangeable backends live here.  The pure-Python functions work on
arbitrary-precision ints and are always available; the compiled extension
(``localinv._speedups``, built by setup.py) implements the same loops on
int64 and is picked at import time when present.  Setting LOCALINV_PURE=1
forces the pure backend.  Dispatching callers fall back to the pure path
whenever int64 could overflow, so results are identical bit for bit.
"""

from __future__ import annotations

import math
import os
from array import array
from itertools import product as _iproduct

try:
    if os.environ.get("LOCALINV_PURE"):
        compiled = None
    else:
        from . import _speedups as compiled  # type: ignore[attr-defined]
except ImportError:
    compiled = None

_I64_SAFE = 2**62


def backend_name() -> str:
    return "compiled" if compiled is not None else "pure"


# -- contraction sum -----------------------------------------------------------


def eval_sum_pure(mats, labels0, sigmas0, dims, strides) -> int:
    """Sum over all index assignments of the product of selected entries.

    mats[j] is the flattened D x D integer matrix of input j; labels0 gives
    the 0-based input at each position; sigmas0[i][p] is the 0-based image of
    position p on wire i.  Wire i contributes one index per position, and the
    entry picked at position p has row (r[i][p])_i and column (r[i][sig_i(p)])_i.
    """
    k = len(labels0)
    n = len(dims)
    if k == 0:
        return 1
    big = math.prod(dims)
    row_digits = [[i * k + p for i in range(n)] for p in range(k)]
    col_digits = [[i * k + sigmas0[i][p] for i in range(n)] for p in range(k)]
    stride = list(strides)
    mats_at = [mats[j] for j in labels0]
    total = 0
    for assign in _iproduct(*(range(dims[i // k]) for i in range(n * k))):
        term = 1
        for p in range(k):
            row = 0
            col = 0
            for i in range(n):
                row += assign[row_digits[p][i]] * stride[i]
                col += assign[col_digits[p][i]] * stride[i]
            term *= mats_at[p][row * big + col]
            if term == 0:
                break
        total += term
    return total


def eval_sum(mats, labels0, sigmas0, dims, strides) -> int:
    """Dispatching contraction sum; exact for any integer magnitudes."""
    k = len(labels0)
    if compiled is not None and k:
        max_abs = max((max(abs(x) for x in m) for m in mats), default=0)
        n_assign = math.prod(d**k for d in dims)
        if max_abs == 0:
            return 0
        if n_assign * max_abs**k < _I64_SAFE:
            big = math.prod(dims)
            flat = array("q")
            for m in mats:
                flat.extend(m)
            sig = array("i")
            for w in sigmas0:
                sig.extend(w)
            return compiled.eval_sum_i64(
                flat,
                big,
                array("i", labels0),
                sig,
                array("i", dims),
                array("q", strides),
                len(dims),
                k,
            )
    return eval_sum_pure(mats, labels0, sigmas0, dims, strides)


# -- fraction-free echelon rank --------------------------------------------------


def echelon_rank_pure(rows) -> int:
    """Rank of an integer matrix by incremental fraction-free elimination.

    Pivoting is deterministic (first nonzero in column order); every reduced
    row is divided by the gcd of its entries, which keeps growth in check
    without leaving exact integer arithmetic.
    """
    pivots: list[tuple[int, list[int]]] = []  # (column, row), sorted by column
    for raw in rows:
        row = list(raw)
        for col, prow in pivots:
            v = row[col]
            if v:
                pv = prow[col]
                row = [pv * a - v * b for a, b in zip(row, prow)]
        lead = next((j for j, a in enumerate(row) if a), None)
        if lead is None:
            continue
        g = 0
        for a in row:
            if a:
                g = math.gcd(g, a)
        if g > 1:
            row = [a // g for a in row]
        if row[lead] < 0:
            row = [-a for a in row]
        at = next((t for t, (c, _) in enumerate(pivots) if c > lead), len(pivots))
        pivots.insert(at, (lead, row))
    return len(pivots)


def echelon_rank(rows, ncols: int | None = None) -> int:
    """Dispatching exact rank; falls back to pure on (potential) overflow."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if compiled is not None:
        if all(abs(x) < _I64_SAFE for r in rows for x in r):
            flat = array("q")
            for r in rows:
                flat.extend(r)
            got = compiled.echelon_rank_i64(flat, len(rows), ncols)
            if got >= 0:
                return got
    return echelon_rank_pure(rows)
