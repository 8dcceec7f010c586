"""Brute-force oracles: centralizer dimensions, invariant-space dimensions,
and evaluation-rank spans of the trace monomials.

Everything is exact.  Group invariance is imposed infinitesimally (the group
is connected, so Lie-algebra derivations suffice), and two standard exact
reductions shrink the linear systems before fraction-free elimination:

* torus reduction: commuting with the diagonal matrix units forces block
  structure by weight, so only weight-compatible unknowns are kept;
* highest-weight reduction: in a completely reducible module a weight-zero
  vector killed by the simple raising operators spans a trivial
  subrepresentation, so only the operators E_{a,a+1} need equations.

Both cut the system without changing its solution set; tests cross-check
against the full gl-basis systems at small sizes.
"""

from __future__ import annotations

import itertools
import math
import random

from .errors import SizeGuardError, ValidationError
from .evaluation import batch_evaluate
from .kernels import echelon_rank
from .monomials import enumerate_generators
from .perms import all_permutations, check_dims, total_dim
from .tensors import kron, random_endotuple

RHO_GUARD = 10**5
ORACLE_GUARD = 10**4


# -- tensor-power basis bookkeeping ---------------------------------------------


def _copy_radix(dims, m: int) -> list[int]:
    """Digit radixes of V^(x)m in wire-major, copy-minor order."""
    return [d for d in dims for _ in range(m)]


def _all_digit_tuples(radix):
    return list(itertools.product(*(range(r) for r in radix)))


def _flat(digits, radix) -> int:
    out = 0
    for d, r in zip(digits, radix):
        out = out * r + d
    return out


def rho_matrix(sigmas, dims, m: int):
    """Permutation matrix of the wire-wise copy shuffle on V^(x)m.

    Basis layout is wire-major then copy-major; the (i,j) slot of the image
    of a basis vector holds the (i, sigma_i^{-1}(j)) slot of the input.
    """
    dims = check_dims(dims)
    sigmas = tuple(tuple(w) for w in sigmas)
    if len(sigmas) != len(dims):
        raise ValidationError("need one permutation per tensor factor")
    for w in sigmas:
        if len(w) != m:
            raise ValidationError(f"permutations must act on {m} copies")
    radix = _copy_radix(dims, m)
    size = math.prod(radix)
    rows = [[0] * size for _ in range(size)]
    n = len(dims)
    for digits in _all_digit_tuples(radix):
        image = list(digits)
        for i in range(n):
            inv = [0] * m
            for j in range(1, m + 1):
                inv[sigmas[i][j - 1] - 1] = j
            for j in range(m):
                image[i * m + j] = digits[i * m + (inv[j] - 1)]
        rows[_flat(image, radix)][_flat(digits, radix)] = 1
    return rows


def mu_matrix(g, m: int):
    """Matrix of the m-fold diagonal action of a local group element."""
    facs = []
    for f in g.factors:
        facs.extend([f] * m)
    return kron(facs)


def span_dimension_rho(dims, m: int, guard: int = RHO_GUARD) -> int:
    """Rank of the flattened copy-shuffle matrices over all (m!)^n choices."""
    dims = check_dims(dims)
    size = total_dim(dims) ** (2 * m)
    if size > guard:
        raise SizeGuardError(
            f"flattened matrices have {size} entries > guard {guard}; "
            "reduce dims or m"
        )
    rows = []
    for sig in itertools.product(all_permutations(m), repeat=len(dims)):
        mat = rho_matrix(sig, dims, m)
        rows.append([x for row in mat for x in row])
    return echelon_rank(rows)


# -- commutant of the local group action ----------------------------------------


def _raising_entries(dims, m: int, factor: int, a: int):
    """Entries (row, col) of the derivation of E_{a,a+1} in one factor."""
    radix = _copy_radix(dims, m)
    entries = []
    for digits in _all_digit_tuples(radix):
        col = _flat(digits, radix)
        for j in range(m):
            t = factor * m + j
            if digits[t] == a + 1:
                image = list(digits)
                image[t] = a
                entries.append((_flat(image, radix), col))
    return entries


def _full_gl_entries(dims, m: int, factor: int, a: int, b: int):
    """Entries of the derivation of E_{ab} (any a, b) in one factor."""
    radix = _copy_radix(dims, m)
    entries = []
    for digits in _all_digit_tuples(radix):
        col = _flat(digits, radix)
        for j in range(m):
            t = factor * m + j
            if digits[t] == b:
                image = list(digits)
                image[t] = a
                entries.append((_flat(image, radix), col))
    return entries


def _weight_profile(digits, dims, m: int):
    out = []
    for i, d in enumerate(dims):
        counts = [0] * d
        for j in range(m):
            counts[digits[i * m + j]] += 1
        out.append(tuple(counts))
    return tuple(out)


def _commutant_nullity(dims, m: int, operators, profiles) -> int:
    """Nullity of [X, L] = 0 over X restricted to profile-matched pairs."""
    radix = _copy_radix(dims, m)
    size = math.prod(radix)
    classes: dict = {}
    for digits in _all_digit_tuples(radix):
        classes.setdefault(profiles(digits), []).append(_flat(digits, radix))
    cls_of = {}
    for prof, members in classes.items():
        for x in members:
            cls_of[x] = prof
    unknowns: dict[tuple[int, int], int] = {}
    for members in classes.values():
        for r in members:
            for c in members:
                unknowns[(r, c)] = len(unknowns)
    # one equation per operator and matrix slot: [X, L_op][r, c] = 0
    equations: dict[tuple[int, int, int], dict[int, int]] = {}

    def add(eq_key, unk_key, coeff):
        row = equations.setdefault(eq_key, {})
        row[unknowns[unk_key]] = row.get(unknowns[unk_key], 0) + coeff

    for op_index, entries in enumerate(operators):
        for u, w in entries:
            for r in classes[cls_of[u]]:  # (X L)[r, w] picks up X[r, u]
                add((op_index, r, w), (r, u), 1)
            for c in classes[cls_of[w]]:  # (L X)[u, c] picks up X[w, c]
                add((op_index, u, c), (w, c), -1)
    rows = []
    for coeffs in equations.values():
        row = [0] * len(unknowns)
        for idx, v in coeffs.items():
            row[idx] = v
        rows.append(row)
    return len(unknowns) - echelon_rank(rows)


def commutant_dimension_mu(
    dims, m: int, guard: int = RHO_GUARD, reduced: bool = True
) -> int:
    """Dimension of the commutant of the diagonal local GL action on V^(x)m.

    ``reduced`` applies the weight/highest-weight reductions; the full
    gl-basis system (all E_ab, unconstrained X) gives the same value and is
    kept for cross-checks at tiny sizes.
    """
    dims = check_dims(dims)
    size = total_dim(dims) ** (2 * m)
    if size > guard:
        raise SizeGuardError(
            f"commutant system for dims={dims}, m={m} has {size} unknowns "
            f"> guard {guard}; reduce dims or m"
        )
    if reduced:
        ops = [
            _raising_entries(dims, m, i, a)
            for i, d in enumerate(dims)
            for a in range(d - 1)
        ]
        return _commutant_nullity(
            dims, m, ops, lambda digits: _weight_profile(digits, dims, m)
        )
    ops = [
        _full_gl_entries(dims, m, i, a, b)
        for i, d in enumerate(dims)
        for a in range(d)
        for b in range(d)
    ]
    return _commutant_nullity(dims, m, ops, lambda digits: 0)


# -- invariant polynomials in multidegree alpha ----------------------------------


def _entry_digits(dims):
    return _all_digit_tuples(list(dims))


def _var_weight(dims, r_digits, c_digits):
    out = []
    for i, d in enumerate(dims):
        w = [0] * d
        w[r_digits[i]] += 1
        w[c_digits[i]] -= 1
        out.append(tuple(w))
    return tuple(out)


def _zero_weight(dims):
    return tuple(tuple([0] * d) for d in dims)


def _add_weights(w1, w2):
    return tuple(
        tuple(a + b for a, b in zip(f1, f2)) for f1, f2 in zip(w1, w2)
    )


def invariant_space_dimension(
    alpha, dims, m: int, guard: int = ORACLE_GUARD, reduced: bool = True
) -> int:
    """Dimension of the multidegree-alpha invariants, from the derivation system.

    Candidate monomials in the matrix entries are restricted to torus weight
    zero (``reduced``); the equations D_X p = 0 then run over the simple
    raising operators of each factor.  The unreduced variant uses every
    monomial and the full gl basis.
    """
    alpha = tuple(alpha)
    dims = check_dims(dims)
    if len(alpha) != m:
        raise ValidationError(f"alpha has length {len(alpha)} but m = {m}")
    if any(a < 0 for a in alpha):
        raise ValidationError("alpha entries must be non-negative")
    points = _entry_digits(dims)
    point_index = {p: i for i, p in enumerate(points)}

    # variables: (input j, row index, col index), with weights
    var_weight = {}
    vars_by_input = []
    for j in range(m):
        mine = []
        for ri, r in enumerate(points):
            for ci, c in enumerate(points):
                v = (j, ri, ci)
                mine.append(v)
                var_weight[v] = _var_weight(dims, r, c)
        vars_by_input.append(mine)

    zero = _zero_weight(dims)
    basis = []
    for combo in itertools.product(
        *(
            itertools.combinations_with_replacement(vars_by_input[j], alpha[j])
            for j in range(m)
        )
    ):
        mono = tuple(sorted(v for part in combo for v in part))
        w = zero
        for v in mono:
            w = _add_weights(w, var_weight[v])
        if not reduced or w == zero:
            basis.append(mono)
        if len(basis) > guard:
            raise SizeGuardError(
                f"monomial basis for alpha={alpha}, dims={dims} exceeds guard "
                f"{guard}; reduce the degree or dims"
            )
    index = {mono: i for i, mono in enumerate(basis)}

    def term_vars(v, op):
        """Image of one variable under the derivation of E_{ab} in a factor."""
        i, a, b = op
        j, ri, ci = v
        r = points[ri]
        c = points[ci]
        out = []
        if r[i] == a:
            r2 = list(r)
            r2[i] = b
            out.append((1, (j, point_index[tuple(r2)], ci)))
        if c[i] == b:
            c2 = list(c)
            c2[i] = a
            out.append((-1, (j, ri, point_index[tuple(c2)])))
        return out

    if reduced:
        ops = [(i, a, a + 1) for i, d in enumerate(dims) for a in range(d - 1)]
    else:
        ops = [
            (i, a, b) for i, d in enumerate(dims) for a in range(d) for b in range(d)
        ]

    rows = []
    for op in ops:
        targets: dict[tuple, dict[int, int]] = {}
        for src_idx, mono in enumerate(basis):
            seen = set()
            for v in mono:
                if v in seen:
                    continue
                seen.add(v)
                e = mono.count(v)
                rest = list(mono)
                rest.remove(v)
                for coef, v2 in term_vars(v, op):
                    new = tuple(sorted(rest + [v2]))
                    row = targets.setdefault(new, {})
                    row[src_idx] = row.get(src_idx, 0) + e * coef
        for coeffs in targets.values():
            row = [0] * len(basis)
            for idx, val in coeffs.items():
                row[idx] = val
            rows.append(row)
    return len(basis) - echelon_rank(rows)


# -- evaluation span of the trace monomials ---------------------------------------


def _rank_fraction_rows(rows) -> int:
    int_rows = []
    for row in rows:
        scale = 1
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        int_rows.append([int(x * scale) for x in row])
    return echelon_rank(int_rows)


def trace_span_report(
    alpha, dims, m: int, seed: int = 0, guard: int = ORACLE_GUARD
) -> dict:
    """Evaluation rank of the degree-alpha canonical monomials.

    Rows are girth-filtered canonical monomials, columns seeded random
    endotuples; the rank must be unchanged when the sample count doubles.
    """
    alpha = tuple(alpha)
    dims = check_dims(dims)
    if len(alpha) != m:
        raise ValidationError(f"alpha has length {len(alpha)} but m = {m}")
    if sum(alpha) == 0:
        # only the empty monomial: the constants, dimension 1
        return {"dim": 1, "samples": 0, "candidates": 0}
    cands = enumerate_generators(alpha, dims, apply_girth=True)
    if not cands:
        return {"dim": 0, "samples": 0, "candidates": 0}
    if len(cands) > guard:
        raise SizeGuardError(
            f"{len(cands)} candidate monomials exceed guard {guard}"
        )
    rng = random.Random(seed)
    n0 = max(4, len(cands))
    samples = [random_endotuple(dims, m, rng=rng) for _ in range(2 * n0)]
    values = batch_evaluate(cands, samples)
    rank_half = _rank_fraction_rows([row[:n0] for row in values])
    rank_full = _rank_fraction_rows(values)
    used = 2 * n0
    while rank_half != rank_full:
        if used > 16 * n0:
            raise SizeGuardError(
                "evaluation rank failed to stabilize under doubling"
            )
        extra = [random_endotuple(dims, m, rng=rng) for _ in range(used)]
        more = batch_evaluate(cands, extra)
        values = [row + extra_row for row, extra_row in zip(values, more)]
        used *= 2
        rank_half = rank_full
        rank_full = _rank_fraction_rows(values)
    return {"dim": rank_full, "samples": used, "candidates": len(cands)}


def trace_span_dimension(
    alpha, dims, m: int, seed: int = 0, guard: int = ORACLE_GUARD
) -> int:
    return trace_span_report(alpha, dims, m, seed=seed, guard=guard)["dim"]


def verify_generation(alpha, dims, m: int, seed: int = 0) -> dict:
    """Compare the derivation-system oracle with the trace-monomial span."""
    alpha = tuple(alpha)
    dims = check_dims(dims)
    oracle = invariant_space_dimension(alpha, dims, m)
    span = trace_span_report(alpha, dims, m, seed=seed)
    return {
        "alpha": list(alpha),
        "d": list(dims),
        "m": m,
        "oracle_dim": oracle,
        "span_dim": span["dim"],
        "match": oracle == span["dim"],
        "seed": seed,
        "samples": span["samples"],
    }
