"""Exact evaluation of trace monomials on endomorphism tuples.

The defining sum (wiring convention, the single source of truth): with one
summation index r[i][p] per wire i and position p,

    value = sum over all r of  prod_p  A[M[p]][ row=(r[i][p])_i, col=(r[i][sigma_i(p)])_i ]

i.e. the column of position p on wire i is contracted against the row of
position sigma_i(p).  On Kronecker-product inputs this splits per wire into
the product of traces of the cycle words, which is what evaluate_simple
computes directly.

Internally each input is scaled to an integer matrix by the lcm of its entry
denominators; the integer sum runs in the compiled kernel when it provably
fits in int64, in arbitrary-precision Python ints otherwise, and the exact
rational value is recovered by dividing out the scales.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .errors import ValidationError
from .kernels import eval_sum
from .monomials import TraceMonomial
from .perms import cycle_decomposition
from .tensors import (
    Endomorphism,
    SimpleEndo,
    check_endotuple,
    identity_matrix,
    mat_mul,
    mat_trace,
    strides_of,
)


def thread_count() -> int:
    """Worker cap from LOCALINV_THREADS (default 1)."""
    raw = os.environ.get("LOCALINV_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _check_compatible(t: TraceMonomial, dims, count: int) -> None:
    if len(dims) != t.n:
        raise ValidationError(
            f"monomial has {t.n} wires but dimension vector has {len(dims)}"
        )
    top = max(t.labels, default=0)
    if top > count:
        raise ValidationError(f"monomial uses label {top} but only {count} inputs given")


def _int_matrix(e: Endomorphism) -> tuple[list[int], int]:
    """Flatten to integers: (scale * entries, scale) with scale = lcm of denominators."""
    scale = 1
    for row in e.entries:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    flat = [int(x * scale) for row in e.entries for x in row]
    return flat, scale


def evaluate(t: TraceMonomial, endos) -> Fraction:
    """Exact value of the monomial on a tuple of endomorphisms."""
    tup = check_endotuple(endos)
    dims = tup[0].dims
    _check_compatible(t, dims, len(tup))
    if t.size == 0:
        return Fraction(1)
    mats = []
    scales = []
    for e in tup:
        flat, scale = _int_matrix(e)
        mats.append(flat)
        scales.append(scale)
    labels0 = [x - 1 for x in t.labels]
    sigmas0 = [[w[p] - 1 for p in range(t.size)] for w in t.sigma]
    total = eval_sum(mats, labels0, sigmas0, list(dims), list(strides_of(dims)))
    denom = math.prod(scales[x] for x in labels0)
    return Fraction(total, denom)


def evaluate_simple(t: TraceMonomial, simples) -> Fraction:
    """Value on Kronecker-product inputs: per wire, traces of the cycle words."""
    simples = tuple(simples)
    if not simples:
        raise ValidationError("no inputs")
    dims = simples[0].dims
    for s in simples:
        if not isinstance(s, SimpleEndo) or s.dims != dims:
            raise ValidationError("inputs must be SimpleEndos with equal dims")
    _check_compatible(t, dims, len(simples))
    value = Fraction(1)
    for i in range(t.n):
        for cyc in cycle_decomposition(t.sigma[i]) if t.size else []:
            word = identity_matrix(dims[i])
            for p in cyc:
                word = mat_mul(word, simples[t.labels[p - 1] - 1].factors[i])
            value *= mat_trace(word)
    return value


def batch_evaluate(monomials, endotuples) -> list[list[Fraction]]:
    """Row per monomial, column per endomorphism tuple.

    Uses up to LOCALINV_THREADS workers; assembly order is fixed by index, so
    results do not depend on the parallel split.
    """
    monomials = list(monomials)
    endotuples = [check_endotuple(e) for e in endotuples]

    def row(t: TraceMonomial) -> list[Fraction]:
        return [evaluate(t, e) for e in endotuples]

    workers = thread_count()
    if workers == 1 or len(monomials) <= 1:
        return [row(t) for t in monomials]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, monomials))
