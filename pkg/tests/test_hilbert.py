from fractions import Fraction

import pytest

from localinv.errors import (
    ReconstructionInconclusive,
    SizeGuardError,
    ValidationError,
)
from localinv.hilbert import (
    PowerSeries,
    RationalFunction,
    berlekamp_massey,
    bound_report_to_json,
    check_pole_orders,
    cyclotomic,
    default_truncation,
    degree_bounds,
    graded_generator_set,
    hadamard,
    hs_local,
    hs_single,
    poly_divmod,
    poly_mul,
    poly_trim,
    reconstruct_rational,
    series_of_rational,
    verify_bound_empirically,
)
from localinv.perms import necklace_count


def brute_partition_count(n, parts):
    """Independent oracle: partitions of n with parts from the given set."""
    count = 0
    parts = sorted(parts)

    def rec(remaining, max_part):
        nonlocal count
        if remaining == 0:
            count += 1
            return
        for p in parts:
            if p > remaining or p > max_part:
                break
            rec(remaining - p, p)

    rec(n, max(parts))
    return count


def brute_monomial_count(degree, generator_degrees):
    """Independent oracle: degree-weighted exponent vectors in free variables."""
    total = 0

    def rec(i, remaining):
        nonlocal total
        if i == len(generator_degrees):
            total += remaining == 0
            return
        d = generator_degrees[i]
        for e in range(remaining // d + 1):
            rec(i + 1, remaining - e * d)

    rec(0, degree)
    return total


def ones(order):
    return PowerSeries(tuple(Fraction(1) for _ in range(order + 1)))


def test_graded_generator_set():
    gens = graded_generator_set(2, 2)
    assert gens == [(k, necklace_count(2, k)) for k in (1, 2, 3, 4)]


def test_hs_single_m1_d1_geometric():
    s = hs_single(1, 1, 10)
    assert all(c == 1 for c in s.coeffs)


def test_hs_single_m1_d2_partition_counts():
    s = hs_single(1, 2, 12)
    expect = [brute_partition_count(j, (1, 2, 3, 4)) for j in range(13)]
    assert [int(c) for c in s.coeffs] == expect
    assert [int(c) for c in s.coeffs[:7]] == [1, 1, 2, 3, 5, 6, 9]


def test_hs_single_m2_d1_stars_and_bars():
    s = hs_single(2, 1, 10)
    assert [int(c) for c in s.coeffs] == [k + 1 for k in range(11)]


def test_hs_single_counts_free_monomials():
    # coefficient j counts degree-j monomials in the necklace variables
    for m, d in [(1, 2), (2, 2)]:
        degs = []
        for k, mult in graded_generator_set(m, d):
            degs += [k] * mult
        s = hs_single(m, d, 8)
        for j in range(9):
            assert int(s.coeffs[j]) == brute_monomial_count(j, degs)


def test_hadamard_units_and_squares():
    s = hs_single(1, 2, 12)
    assert hadamard(s, ones(12)).coeffs == s.coeffs
    zero = PowerSeries(tuple(Fraction(0) for _ in range(13)))
    assert hadamard(s, zero).coeffs == zero.coeffs
    sq = hadamard(s, s)
    assert [int(c) for c in sq.coeffs[:5]] == [1, 1, 4, 9, 25]


def test_hadamard_commutative_associative_bilinear():
    a = hs_single(1, 2, 8)
    b = hs_single(2, 1, 8)
    c = hs_single(2, 2, 8)
    assert hadamard(a, b).coeffs == hadamard(b, a).coeffs
    assert hadamard(hadamard(a, b), c).coeffs == hadamard(a, hadamard(b, c)).coeffs
    scaled = PowerSeries(tuple(3 * x for x in a.coeffs))
    assert hadamard(scaled, b).coeffs == tuple(
        3 * x for x in hadamard(a, b).coeffs
    )
    summed = PowerSeries(tuple(x + y for x, y in zip(a.coeffs, c.coeffs)))
    assert hadamard(summed, b).coeffs == tuple(
        x + y for x, y in zip(hadamard(a, b).coeffs, hadamard(c, b).coeffs)
    )


def test_hs_local_product_identity():
    for dims in [(2, 2), (2, 3)]:
        loc = hs_local(1, dims, 20)
        singles = [hs_single(1, d, 20) for d in dims]
        for j in range(21):
            prod = 1
            for s in singles:
                prod *= s.coeffs[j]
            assert loc.coeffs[j] == prod


def test_hs_local_edge_cases():
    assert hs_local(1, (2,), 10).coeffs == hs_single(1, 2, 10).coeffs
    assert all(c == 1 for c in hs_local(1, (1, 1, 1), 10).coeffs)


def test_berlekamp_massey_geometric():
    den, length = berlekamp_massey([1] * 10)
    assert poly_trim(den) == (Fraction(1), Fraction(-1))
    assert length == 1


def test_berlekamp_massey_fibonacci():
    fib = [1, 1]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    den, length = berlekamp_massey(fib)
    assert poly_trim(den) == (Fraction(1), Fraction(-1), Fraction(-1))
    assert length == 2


def test_reconstruct_geometric():
    r = reconstruct_rational(ones(10))
    assert r.num == (Fraction(1),)
    assert r.den == (Fraction(1), Fraction(-1))


def test_reconstruct_hs_single_product_form():
    r = reconstruct_rational(hs_single(1, 2, 24))
    expect = (Fraction(1),)
    for a in (1, 2, 3, 4):
        base = tuple(
            Fraction(-1 if i == a else 1 if i == 0 else 0) for i in range(a + 1)
        )
        expect = poly_mul(expect, base)
    assert r.num == (Fraction(1),)
    assert poly_trim(r.den) == poly_trim(expect)


def test_reconstruct_round_trip_identity():
    f = RationalFunction(
        (Fraction(2), Fraction(1)), (Fraction(1), Fraction(0), Fraction(-1))
    )
    series = series_of_rational(f, 30)
    back = reconstruct_rational(series)
    assert back.num == f.num and back.den == f.den


def test_reconstruct_inconclusive_and_guard():
    s = hs_single(1, 2, 12)  # denominator degree 10 needs N >= 22
    with pytest.raises(ReconstructionInconclusive):
        reconstruct_rational(s, den_cap=5)
    with pytest.raises(SizeGuardError):
        reconstruct_rational(s, den_cap=6)  # 2*6+2 > 12


def test_cyclotomic_small():
    assert cyclotomic(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic(2) == (Fraction(1), Fraction(1))
    assert cyclotomic(4) == (Fraction(1), Fraction(0), Fraction(1))
    # product over divisors reconstitutes t^n - 1
    for n in (6, 12):
        prod = (Fraction(1),)
        for d in range(1, n + 1):
            if n % d == 0:
                prod = poly_mul(prod, cyclotomic(d))
        expect = tuple(
            Fraction(-1 if i == 0 else 1 if i == n else 0) for i in range(n + 1)
        )
        assert prod == expect


def test_check_pole_orders_examples():
    one_t4 = RationalFunction(
        (Fraction(1),),
        (Fraction(1), Fraction(0), Fraction(0), Fraction(0), Fraction(-1)),
    )
    assert check_pole_orders(one_t4, 4)["ok"]
    assert not check_pole_orders(one_t4, 3)["ok"]
    fib = RationalFunction((Fraction(1),), (Fraction(1), Fraction(-1), Fraction(-1)))
    out = check_pole_orders(fib, 50)
    assert not out["ok"]
    assert out["residual_degree"] == 2


def test_check_pole_orders_witness_covers():
    s = hs_single(1, 2, 24)
    r = reconstruct_rational(s)
    out = check_pole_orders(r, 4)
    assert out["ok"]
    assert out["exponents"] == {"1": 1, "2": 1, "3": 1, "4": 1}


def test_local_22_reconstruction_and_poles():
    series = hs_local(1, (2, 2), default_truncation((2, 2)))
    r = reconstruct_rational(series)
    assert len(r.den) - 1 == 36
    out = check_pole_orders(r, 16)
    assert out["ok"]
    # round trip against the series
    assert series_of_rational(r, series.order).coeffs == series.coeffs


def test_local_23_reconstruction_and_poles():
    series = hs_local(1, (2, 3), 560)
    r = reconstruct_rational(series)
    assert len(r.den) - 1 == 250
    assert check_pole_orders(r, 36)["ok"]
    # order 36 really occurs, so the bound dim(V)^2 is tight here
    assert not check_pole_orders(r, 35)["ok"]


@pytest.mark.slow
def test_local_33_reconstruction_and_poles():
    series = hs_local(1, (3, 3), 1360)
    r = reconstruct_rational(series)
    assert check_pole_orders(r, 81)["ok"]


def test_degree_bounds_spec_values():
    r = degree_bounds(1, (2, 2))
    assert r.segre_bound == 16
    assert r.final_bound_m1 == 16
    assert r.small_dim_bound == 9
    assert r.girth_bound == (4, 4)
    assert r.girth_bound_small_dim == (3, 3)
    r2 = degree_bounds(2, (2, 2))
    assert r2.segre_bound == 32
    assert r2.final_bound_m1 is None
    r3 = degree_bounds(1, (2, 3))
    assert r3.segre_bound == 36
    assert r3.small_dim_bound == 18
    r4 = degree_bounds(1, (2, 4))
    assert r4.small_dim_bound is None
    assert r4.girth_bound_small_dim is None


def test_degree_bounds_monotone():
    grids = [(2,), (3,), (2, 2), (2, 3), (3, 3), (2, 2, 2)]
    for m in (1, 2):
        for dims in grids:
            base = degree_bounds(m, dims)
            for i in range(len(dims)):
                bigger = list(dims)
                bigger[i] += 1
                inc = degree_bounds(m, tuple(bigger))
                assert inc.segre_bound >= base.segre_bound
                if base.final_bound_m1 is not None and inc.final_bound_m1 is not None:
                    assert inc.final_bound_m1 >= base.final_bound_m1
                if base.small_dim_bound is not None and inc.small_dim_bound is not None:
                    assert inc.small_dim_bound >= base.small_dim_bound
                assert all(
                    x >= y for x, y in zip(inc.girth_bound, base.girth_bound)
                )


def test_bound_report_json_presence_rules():
    j1 = bound_report_to_json(degree_bounds(1, (2, 2)))
    assert "final_bound_m1" in j1 and "small_dim_bound" in j1
    j2 = bound_report_to_json(degree_bounds(2, (2, 4)))
    assert "final_bound_m1" not in j2 and "small_dim_bound" not in j2


def test_verify_bound_empirically():
    report = verify_bound_empirically((2, 2), 3, seed=0)
    per = {row["degree"]: row for row in report["per_degree"]}
    assert per[1]["new_generators_required"]  # nothing below degree 1
    assert per[1]["product_span"] == 0
    assert report["largest_new_generator_degree"] <= 9
    for row in report["per_degree"]:
        assert row["product_span"] <= row["full_span"]


def test_poly_divmod_exact():
    a = poly_mul((Fraction(1), Fraction(2)), (Fraction(3), Fraction(1)))
    q, r = poly_divmod(a, (Fraction(1), Fraction(2)))
    assert r == ()
    assert q == (Fraction(3), Fraction(1))


def test_validation_errors():
    with pytest.raises(ValidationError):
        hs_single(0, 2, 5)
    with pytest.raises(ValidationError):
        check_pole_orders(
            RationalFunction((Fraction(1),), (Fraction(2), Fraction(1))), 4
        )
