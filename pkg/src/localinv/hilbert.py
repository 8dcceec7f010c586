"""Necklace-graded Hilbert series, Hadamard products, rational reconstruction,
pole-order certification and the degree-bound report.

Per-factor series: the formal ring for one factor of dimension d is a
polynomial ring with necklace_count(m, k) generators in each degree k up to
d**2, so its series is prod_k (1 - t^k)^(-n_m(k)).  The series for a
dimension vector is the coefficientwise (Hadamard) product of the factors'
series.  All coefficients are exact.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ReconstructionInconclusive, SizeGuardError, ValidationError
from .perms import check_dims, necklace_count, total_dim

Poly = tuple[Fraction, ...]  # coefficients, constant term first


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]  # c_0 .. c_N

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly  # den[0] == 1, gcd(num, den) == 1


def default_truncation(dims) -> int:
    """6 * dim(V)^2 + 8.

    Large enough to certify reconstruction (N >= 2*degree + 2) for the
    measured denominator degrees at desk scale; the local series for
    dims (2,2) already has denominator degree 36 > 2 * dim(V)^2.
    """
    return 6 * total_dim(dims) ** 2 + 8


def graded_generator_set(m: int, d: int) -> list[tuple[int, int]]:
    """(degree, multiplicity) pairs: necklace counts in degrees 1..d^2."""
    if m < 1 or d < 1:
        raise ValidationError("need m, d >= 1")
    return [(k, necklace_count(m, k)) for k in range(1, d * d + 1)]


def hs_single(m: int, d: int, order: int) -> PowerSeries:
    """Series of the free necklace ring of one factor, truncated at ``order``."""
    if order < 0:
        raise ValidationError("truncation order must be >= 0")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for degree, mult in graded_generator_set(m, d):
        if degree > order:
            break
        for _ in range(mult):
            for j in range(degree, order + 1):
                coeffs[j] += coeffs[j - degree]
    return PowerSeries(tuple(Fraction(c) for c in coeffs))


def hadamard(s1: PowerSeries, s2: PowerSeries) -> PowerSeries:
    """Coefficientwise product, truncated to the shorter input."""
    upto = min(s1.order, s2.order)
    return PowerSeries(
        tuple(a * b for a, b in zip(s1.coeffs[: upto + 1], s2.coeffs[: upto + 1]))
    )


def hs_local(m: int, dims, order: int) -> PowerSeries:
    """Hadamard product of the per-factor series over the dimension vector."""
    dims = check_dims(dims)
    out = hs_single(m, dims[0], order)
    for d in dims[1:]:
        out = hadamard(out, hs_single(m, d, order))
    return out


# -- polynomial helpers (exact, small degrees) -----------------------------------


def poly_trim(p) -> Poly:
    coeffs = list(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(Fraction(c) for c in coeffs)


def poly_mul(a, b) -> Poly:
    a, b = poly_trim(a), poly_trim(b)
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a, b) -> tuple[Poly, Poly]:
    a, b = list(poly_trim(a)), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b):
        f = a[-1] * inv_lead
        shift = len(a) - len(b)
        q[shift] = f
        for j, y in enumerate(b):
            a[shift + j] -= f * y
        while a and a[-1] == 0:
            a.pop()
        if not any(a):
            a = []
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b) -> Poly:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return ()
    lead = a[-1]
    return tuple(x / lead for x in a)


@functools.lru_cache(maxsize=None)
def cyclotomic(order: int) -> Poly:
    """The order-th cyclotomic polynomial, by dividing t^order - 1."""
    p = [Fraction(-1)] + [Fraction(0)] * (order - 1) + [Fraction(1)]
    p = poly_trim(p)
    for d in range(1, order):
        if order % d == 0:
            q, r = poly_divmod(p, cyclotomic(d))
            if r:
                raise AssertionError("cyclotomic division must be exact")
            p = q
    return p


def series_of_rational(f: RationalFunction, order: int) -> PowerSeries:
    """Expand num/den (den[0] == 1) to the requested order."""
    num, den = poly_trim(f.num), poly_trim(f.den)
    if not den or den[0] != 1:
        raise ValidationError("denominator must have constant term 1")
    coeffs = []
    for j in range(order + 1):
        c = num[j] if j < len(num) else Fraction(0)
        for i in range(1, min(j, len(den) - 1) + 1):
            c -= den[i] * coeffs[j - i]
        coeffs.append(c)
    return PowerSeries(tuple(coeffs))


# -- minimal recurrence / rational reconstruction ---------------------------------


def berlekamp_massey(seq) -> tuple[Poly, int]:
    """Shortest LFSR for seq: (connection polynomial with constant term 1, length).

    sum_i C_i seq[n-i] = 0 for every n >= length.  Runs fraction-free: the
    working polynomial keeps integer coefficients (content removed each
    update) and is normalized at the end; scaling the sequence or the
    polynomial by constants changes neither the length nor the result.
    """
    fracs = [Fraction(x) for x in seq]
    scale = 1
    for x in fracs:
        scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = [int(x * scale) for x in fracs]

    cur = [1]  # integer multiple of the true connection polynomial
    prev = [1]
    length = 0
    prev_disc = 1  # integer discrepancy recorded when prev was saved
    gap = 1
    for i, target in enumerate(ints):
        disc = cur[0] * target
        for j in range(1, min(length, len(cur) - 1) + 1):
            disc += cur[j] * ints[i - j]
        if disc == 0:
            gap += 1
            continue
        cand = [prev_disc * c for c in cur] + [0] * max(0, len(prev) + gap - len(cur))
        for j, y in enumerate(prev):
            cand[j + gap] -= disc * y
        content = 0
        for c in cand:
            content = math.gcd(content, c)
        if content > 1:
            cand = [c // content for c in cand]
        if 2 * length <= i:
            prev = cur
            prev_disc = disc
            length = i + 1 - length
            gap = 1
        else:
            gap += 1
        cur = cand
    if cur[0] == 0:
        raise AssertionError("connection polynomial must have nonzero constant term")
    lead = Fraction(cur[0])
    return poly_trim([Fraction(c) / lead for c in cur]) or (Fraction(1),), length


def reconstruct_rational(
    series: PowerSeries, den_cap: int | None = None
) -> RationalFunction:
    """Minimal P/Q reproducing every stored coefficient, or raise.

    The minimal recurrence must fit within ``den_cap`` (default: the largest
    certifiable order, (N - 2) // 2); inconclusive caps raise rather than
    returning a best-effort guess.
    """
    n = series.order
    if den_cap is None:
        den_cap = max(0, (n - 2) // 2)
    if n < 2 * den_cap + 2:
        raise SizeGuardError(
            f"need at least 2*cap+2 = {2 * den_cap + 2} coefficients beyond c_0, "
            f"have N = {n}; raise N or lower the cap"
        )
    den, length = berlekamp_massey(series.coeffs)
    if length > den_cap:
        raise ReconstructionInconclusive(
            f"minimal recurrence order {length} exceeds cap {den_cap}"
        )
    # defensive tail scan with cleared denominators (zero is scale-invariant)
    dscale = 1
    for x in den:
        dscale = dscale * x.denominator // math.gcd(dscale, x.denominator)
    den_int = [int(x * dscale) for x in den]
    sscale = 1
    for x in series.coeffs:
        sscale = sscale * x.denominator // math.gcd(sscale, x.denominator)
    coeffs_int = [int(x * sscale) for x in series.coeffs]
    for j in range(length, n + 1):
        acc = 0
        for i, q in enumerate(den_int):
            if i > j:
                break
            acc += q * coeffs_int[j - i]
        if acc:
            raise AssertionError("recurrence fails to annihilate the series tail")
    num = _poly_series_product(den, series.coeffs, length)
    # BM minimality makes num and den coprime; reduce defensively when cheap
    if num and len(den) > 1 and max(len(num), len(den)) <= 65:
        g = poly_gcd(num, den)
        if len(g) > 1:
            num, _ = poly_divmod(num, g)
            den, _ = poly_divmod(den, g)
    scale = den[0]
    den = tuple(x / scale for x in den)
    num = tuple(x / scale for x in num)
    return RationalFunction(poly_trim(num), poly_trim(den) or (Fraction(1),))


def _poly_series_product(den, coeffs, upto: int) -> Poly:
    out = []
    for j in range(upto):
        c = Fraction(0)
        for i, q in enumerate(den):
            if i > j:
                break
            c += q * coeffs[j - i]
        out.append(c)
    return poly_trim(out)


# -- pole-order certification ------------------------------------------------------


def check_pole_orders(f: RationalFunction, bound: int) -> dict:
    """Does the denominator divide prod_{a<=bound} (1 - t^a)^{e_a}, e_a >= 0?

    Equivalent to every irreducible factor being cyclotomic of order at most
    ``bound`` (all poles are roots of unity of order <= bound), since the
    order-l cyclotomic divides (1 - t^l).  The witness is a covering exponent
    vector (descending greedy: e_a covers whatever the multiplicity of the
    order-a cyclotomic still needs), or the degree of the offending factor.
    """
    if bound < 1:
        raise ValidationError("bound must be >= 1")
    den = poly_trim(f.den)
    if not den or den[0] != 1:
        raise ValidationError("denominator must have constant term 1")
    mults = {}
    rem = den
    for order in range(1, bound + 1):
        phi = cyclotomic(order)
        count = 0
        while len(rem) >= len(phi):
            q, r = poly_divmod(rem, phi)
            if r:
                break
            rem = q
            count += 1
        if count:
            mults[order] = count
    if len(rem) > 1:
        return {
            "ok": False,
            "reason": "denominator has a factor that is not cyclotomic of "
            f"order <= {bound}",
            "residual_degree": len(rem) - 1,
        }
    exponents: dict[int, int] = {}
    for a in range(bound, 0, -1):
        covered = sum(exponents.get(b, 0) for b in range(2 * a, bound + 1, a))
        need = mults.get(a, 0) - covered
        if need > 0:
            exponents[a] = need
    for order, mult in mults.items():  # the witness really covers den
        total = sum(e for a, e in exponents.items() if a % order == 0)
        if total < mult:
            raise AssertionError("exponent cover failed")
    return {"ok": True, "exponents": {str(a): e for a, e in sorted(exponents.items())}}


# -- degree bounds ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    dims: tuple[int, ...]
    m: int
    segre_bound: int  # m * dim(V)^2
    final_bound_m1: int | None  # dim(V)^2, only for m == 1
    small_dim_bound: int | None  # prod binom(d_i + 1, 2), only when all d_i <= 3
    girth_bound: tuple[int, ...]  # (d_1^2, ..., d_n^2)
    girth_bound_small_dim: tuple[int, ...] | None


def degree_bounds(m: int, dims) -> BoundReport:
    dims = check_dims(dims)
    if m < 1:
        raise ValidationError("m must be >= 1")
    big = total_dim(dims) ** 2
    all_small = all(d <= 3 for d in dims)
    return BoundReport(
        dims=dims,
        m=m,
        segre_bound=m * big,
        final_bound_m1=big if m == 1 else None,
        small_dim_bound=math.prod(d * (d + 1) // 2 for d in dims) if all_small else None,
        girth_bound=tuple(d * d for d in dims),
        girth_bound_small_dim=(
            tuple(d * (d + 1) // 2 for d in dims) if all_small else None
        ),
    )


def bound_report_to_json(r: BoundReport) -> dict:
    out = {
        "dims": list(r.dims),
        "m": r.m,
        "segre_bound": r.segre_bound,
        "girth_bound": list(r.girth_bound),
    }
    if r.final_bound_m1 is not None:
        out["final_bound_m1"] = r.final_bound_m1
    if r.small_dim_bound is not None:
        out["small_dim_bound"] = r.small_dim_bound
    if r.girth_bound_small_dim is not None:
        out["girth_bound_small_dim"] = list(r.girth_bound_small_dim)
    return out


def verify_bound_empirically(dims, max_degree: int, seed: int = 0) -> dict:
    """Observed generation degrees for m = 1: at which k do new generators appear?

    For each total degree k, compares the evaluation span of the degree-k
    monomials that split into smaller ones (products of lower-degree
    invariants) against the span of all of them; a gap means degree k needs
    new generators.
    """
    from .evaluation import batch_evaluate
    from .monomials import enumerate_generators, position_components
    from .spanchecks import _rank_fraction_rows, trace_span_report
    from .tensors import random_endotuple

    dims = check_dims(dims)
    if max_degree < 1:
        raise ValidationError("max_degree must be >= 1")
    rng = random.Random(seed)
    per_degree = []
    needed = []
    for k in range(1, max_degree + 1):
        cands = enumerate_generators((k,), dims, apply_girth=True)
        full = trace_span_report((k,), dims, 1, seed=rng.randrange(2**32))
        products = [t for t in cands if len(position_components(t)) > 1]
        if products:
            samples = [
                random_endotuple(dims, 1, rng=rng)
                for _ in range(2 * max(4, len(products)))
            ]
            prod_dim = _rank_fraction_rows(batch_evaluate(products, samples))
        else:
            prod_dim = 0
        new_needed = prod_dim < full["dim"]
        if new_needed:
            needed.append(k)
        per_degree.append(
            {
                "degree": k,
                "full_span": full["dim"],
                "product_span": prod_dim,
                "new_generators_required": new_needed,
            }
        )
    return {
        "dims": list(dims),
        "m": 1,
        "max_degree": max_degree,
        "per_degree": per_degree,
        "largest_new_generator_degree": max(needed) if needed else 0,
        "seed": seed,
    }
