"""Endomorphisms of a tensor product space, with exact rational entries.

An endomorphism of V = V_1 (x) ... (x) V_n is stored dense as a D x D matrix
of Fractions, D = prod(d_i), indexed by flattened multi-indices in row-major
order with wire 1 outermost.  That layout is part of the file format.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .perms import check_dims, total_dim

Scalar = Fraction
Matrix = tuple[tuple[Fraction, ...], ...]


def parse_scalar(text) -> Fraction:
    """Parse "p/q" (or "p", or an int) into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {text!r}: {exc}") from None


def format_scalar(x: Fraction) -> str:
    return str(x)


def strides_of(dims) -> tuple[int, ...]:
    """Row-major strides, wire 1 outermost."""
    dims = check_dims(dims)
    out = []
    acc = 1
    for d in reversed(dims):
        out.append(acc)
        acc *= d
    return tuple(reversed(out))


def flatten_index(multi, strides) -> int:
    return sum((x - 1) * s for x, s in zip(multi, strides))


@dataclass(frozen=True)
class Endomorphism:
    dims: tuple[int, ...]
    entries: Matrix  # D x D, row-major multi-indices

    @property
    def total(self) -> int:
        return total_dim(self.dims)


@dataclass(frozen=True)
class SimpleEndo:
    """A Kronecker product: one d_i x d_i factor per wire."""

    factors: tuple[Matrix, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)


@dataclass(frozen=True)
class LocalGroupElement:
    """An invertible matrix per wire, acting by simultaneous conjugation."""

    factors: tuple[Matrix, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)


def _as_matrix(rows, size: int | None = None, square: bool = True) -> Matrix:
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    nrows = len(mat)
    if nrows == 0 or any(len(r) != len(mat[0]) for r in mat):
        raise ValidationError("matrix rows must be nonempty and equal length")
    if square and len(mat[0]) != nrows:
        raise ValidationError(f"matrix must be square, got {nrows}x{len(mat[0])}")
    if size is not None and nrows != size:
        raise ValidationError(f"expected size {size}, got {nrows}")
    return mat


def endomorphism(dims, rows) -> Endomorphism:
    dims = check_dims(dims)
    return Endomorphism(dims, _as_matrix(rows, size=total_dim(dims)))


def simple_endo(factors) -> SimpleEndo:
    return SimpleEndo(tuple(_as_matrix(f) for f in factors))


def group_element(factors) -> LocalGroupElement:
    g = LocalGroupElement(tuple(_as_matrix(f) for f in factors))
    for i, f in enumerate(g.factors):
        if det(f) == 0:
            raise ValidationError(f"factor {i + 1} is singular")
    return g


def check_endotuple(endos) -> tuple[Endomorphism, ...]:
    tup = tuple(endos)
    if not tup:
        raise ValidationError("endomorphism tuple is empty")
    dims = tup[0].dims
    for e in tup:
        if e.dims != dims:
            raise ValidationError(f"mixed dimension vectors: {e.dims} vs {dims}")
    return tup


# -- exact matrix arithmetic ---------------------------------------------------


def identity_matrix(size: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(size)) for i in range(size)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size))
        for i in range(size)
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def det(a: Matrix) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    size = len(a)
    rows = [list(r) for r in a]
    result = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            result = -result
        result *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return result


def mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse via Gauss-Jordan; raises on singular input."""
    size = len(a)
    rows = [list(r) + [Fraction(1 if i == j else 0) for j in range(size)] for i, r in enumerate(a)]
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            raise ValidationError("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[size:]) for row in rows)


def kron(mats) -> Matrix:
    """Kronecker product in wire order 1..n (wire 1 outermost)."""
    mats = list(mats)
    out = ((Fraction(1),),)
    for m in mats:
        size_a, size_b = len(out), len(m)
        out = tuple(
            tuple(out[ia][ja] * m[ib][jb] for ja in range(size_a) for jb in range(size_b))
            for ia in range(size_a)
            for ib in range(size_b)
        )
    return out


def kron_expand(s: SimpleEndo) -> Endomorphism:
    return Endomorphism(s.dims, kron(s.factors))


def local_conjugate(endos, g: LocalGroupElement):
    """Replace each A by (kron g) A (kron g)^-1, exactly."""
    tup = check_endotuple(endos)
    if g.dims != tup[0].dims:
        raise ValidationError(f"group element dims {g.dims} != endo dims {tup[0].dims}")
    big = kron(g.factors)
    big_inv = kron(tuple(mat_inverse(f) for f in g.factors))
    return tuple(
        Endomorphism(e.dims, mat_mul(mat_mul(big, e.entries), big_inv)) for e in tup
    )


# -- seeded random generators ---------------------------------------------------

_MAX_SINGULAR_RETRIES = 64


def random_scalar(rng: random.Random) -> Fraction:
    """Small rational: numerator in -3..3, denominator a power of 2 up to 4."""
    return Fraction(rng.randint(-3, 3), 2 ** rng.randint(0, 2))


def _random_matrix(rng: random.Random, size: int) -> Matrix:
    return tuple(tuple(random_scalar(rng) for _ in range(size)) for _ in range(size))


def random_endotuple(dims, m: int, seed=None, rng: random.Random | None = None):
    """m dense endomorphisms with small rational entries; deterministic per seed."""
    dims = check_dims(dims)
    rng = random.Random(seed) if rng is None else rng
    big = total_dim(dims)
    return tuple(Endomorphism(dims, _random_matrix(rng, big)) for _ in range(m))


def random_simple_endos(dims, m: int, seed=None, rng: random.Random | None = None):
    dims = check_dims(dims)
    rng = random.Random(seed) if rng is None else rng
    return tuple(
        SimpleEndo(tuple(_random_matrix(rng, d) for d in dims)) for _ in range(m)
    )


def random_group_element(dims, seed=None, rng: random.Random | None = None) -> LocalGroupElement:
    """Invertible factor per wire; resamples singular draws (bounded retries)."""
    dims = check_dims(dims)
    rng = random.Random(seed) if rng is None else rng
    factors = []
    for d in dims:
        for _ in range(_MAX_SINGULAR_RETRIES):
            cand = _random_matrix(rng, d)
            if det(cand) != 0:
                factors.append(cand)
                break
        else:
            raise ValidationError(f"no invertible {d}x{d} sample after retries")
    return LocalGroupElement(tuple(factors))


# -- JSON ------------------------------------------------------------------------


def endo_to_json(e: Endomorphism) -> dict:
    return {
        "dims": list(e.dims),
        "entries": [[format_scalar(x) for x in row] for row in e.entries],
    }


def simple_to_json(s: SimpleEndo) -> dict:
    return {"factors": [[[format_scalar(x) for x in row] for row in f] for f in s.factors]}


def endo_from_json(obj: dict) -> Endomorphism:
    try:
        dims = [int(x) for x in obj["dims"]]
        rows = [[parse_scalar(x) for x in row] for row in obj["entries"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad endomorphism object: {exc}") from None
    return endomorphism(dims, rows)


def endotuple_to_json(endos) -> dict:
    tup = check_endotuple(endos)
    return {
        "dims": list(tup[0].dims),
        "endos": [
            {"entries": [[format_scalar(x) for x in row] for row in e.entries]}
            for e in tup
        ],
    }


def endotuple_from_json(obj: dict):
    try:
        dims = [int(x) for x in obj["dims"]]
        members = list(obj["endos"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad endotuple object: {exc}") from None
    dims = check_dims(dims)
    out = []
    for i, member in enumerate(members):
        if "entries" in member:
            rows = [[parse_scalar(x) for x in row] for row in member["entries"]]
            out.append(endomorphism(dims, rows))
        elif "factors" in member:
            facs = [
                [[parse_scalar(x) for x in row] for row in f] for f in member["factors"]
            ]
            s = simple_endo(facs)
            if s.dims != dims:
                raise ValidationError(
                    f"endo {i}: factor dims {s.dims} != file dims {dims}"
                )
            out.append(kron_expand(s))
        else:
            raise ValidationError(f"endo {i}: need 'entries' or 'factors'")
    return check_endotuple(out)
