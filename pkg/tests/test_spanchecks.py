import random

import pytest

from localinv.errors import SizeGuardError
from localinv.perms import all_permutations
from localinv.spanchecks import (
    commutant_dimension_mu,
    invariant_space_dimension,
    mu_matrix,
    rho_matrix,
    span_dimension_rho,
    trace_span_dimension,
    trace_span_report,
    verify_generation,
)
from localinv.tensors import mat_mul, random_group_element

# (dims, m) -> common value of span_rho and commutant_mu, derived once from
# both independent computations (and, where classical, cross-checked by hand:
# Schur-Weyl gives 2 for GL2 on 2 copies, 5 on 3 copies, Schur's lemma gives 1
# for the irreducible V1 (x) V2).
CENTRALIZER_CASES = [
    ((2,), 2, 2),
    ((2,), 3, 5),
    ((3,), 2, 2),
    ((2, 2), 1, 1),
    ((2, 2), 2, 4),
    ((2, 3), 2, 4),
]


def test_rho_identity():
    rows = rho_matrix([(1, 2), (1, 2)], (2, 2), 2)
    for i, row in enumerate(rows):
        assert row[i] == 1 and sum(row) == 1


def test_rho_swap_matrix():
    rows = rho_matrix([(2, 1)], (2,), 2)
    # the 4x4 flip operator on C^2 (x) C^2
    expect = [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ]
    assert rows == expect


def test_rho_is_homomorphism():
    rng = random.Random(0)
    perms = all_permutations(2)
    for _ in range(10):
        s = tuple(rng.choice(perms) for _ in range(2))
        t = tuple(rng.choice(perms) for _ in range(2))
        st = tuple(
            tuple(a[b[i] - 1] for i in range(2)) for a, b in zip(s, t)
        )
        left = mat_mul(
            tuple(tuple(map(int, r)) for r in rho_matrix(s, (2, 2), 2)),
            tuple(tuple(map(int, r)) for r in rho_matrix(t, (2, 2), 2)),
        )
        right = rho_matrix(st, (2, 2), 2)
        assert [[int(x) for x in row] for row in left] == right


def test_mu_is_homomorphism():
    g = random_group_element((2, 2), seed=1)
    h = random_group_element((2, 2), seed=2)
    gh = type(g)(
        factors=tuple(mat_mul(a, b) for a, b in zip(g.factors, h.factors))
    )
    assert mat_mul(mu_matrix(g, 2), mu_matrix(h, 2)) == mu_matrix(gh, 2)


def test_mu_commutes_with_rho():
    g = random_group_element((2, 2), seed=3)
    mu = mu_matrix(g, 2)
    for sig in [((2, 1), (1, 2)), ((2, 1), (2, 1)), ((1, 2), (2, 1))]:
        rho = tuple(tuple(map(int, row)) for row in rho_matrix(sig, (2, 2), 2))
        assert mat_mul(mu, rho) == mat_mul(rho, mu)


def test_span_rho_m1_is_one():
    assert span_dimension_rho((2,), 1) == 1
    assert span_dimension_rho((2, 3), 1) == 1


@pytest.mark.parametrize("dims,m,expected", CENTRALIZER_CASES)
def test_centralizer_dimensions_agree(dims, m, expected):
    rho = span_dimension_rho(dims, m)
    mu = commutant_dimension_mu(dims, m)
    assert rho == expected
    assert mu == expected


@pytest.mark.parametrize("dims,m,expected", CENTRALIZER_CASES)
def test_span_rho_product_formula(dims, m, expected):
    prod = 1
    for d in dims:
        prod *= span_dimension_rho((d,), m)
    assert span_dimension_rho(dims, m) == prod


@pytest.mark.parametrize(
    "dims,m",
    [((2,), 1), ((2,), 2), ((3,), 1), ((2, 2), 1)],
)
def test_commutant_reduced_equals_full_system(dims, m):
    assert commutant_dimension_mu(dims, m) == commutant_dimension_mu(
        dims, m, reduced=False
    )


def test_size_guards_raise():
    with pytest.raises(SizeGuardError):
        span_dimension_rho((4, 4), 3)
    with pytest.raises(SizeGuardError):
        commutant_dimension_mu((4, 4), 3)
    with pytest.raises(SizeGuardError):
        invariant_space_dimension((6,), (2, 2), 1, guard=100)
    with pytest.raises(SizeGuardError):
        trace_span_report((4,), (2, 2), 1, guard=10)


def test_invariant_dimension_basics():
    assert invariant_space_dimension((1,), (2, 2), 1) == 1
    assert invariant_space_dimension((1,), (2, 3), 1) == 1
    assert invariant_space_dimension((0, 0), (2, 2), 2) == 1
    assert invariant_space_dimension((2,), (2,), 1) == 2  # Tr(A)^2, Tr(A^2)
    # C[Tr, det] in degree 3: Tr^3 and Tr*det
    assert invariant_space_dimension((3,), (2,), 1) == 2


@pytest.mark.parametrize(
    "alpha,dims,m",
    [((1,), (2, 2), 1), ((2,), (2,), 1), ((2,), (2, 2), 1), ((1, 1), (2, 2), 2)],
)
def test_invariant_dimension_reduced_equals_full(alpha, dims, m):
    assert invariant_space_dimension(alpha, dims, m) == invariant_space_dimension(
        alpha, dims, m, reduced=False
    )


def test_trace_span_values():
    assert trace_span_dimension((1,), (2, 2), 1) == 1
    assert trace_span_dimension((2,), (2,), 1) == 2
    report = trace_span_report((1, 1), (2, 2), 2)
    assert report["candidates"] == 4
    assert report["dim"] == 4


def test_trace_span_rank_stable_across_seeds():
    a = trace_span_dimension((2,), (2, 2), 1, seed=0)
    b = trace_span_dimension((2,), (2, 2), 1, seed=12345)
    assert a == b


def test_verify_generation_small():
    for alpha, m in [((1, 1), 2), ((2,), 1), ((3,), 1)]:
        report = verify_generation(alpha, (2, 2), m)
        assert report["match"], report
        assert report["oracle_dim"] == report["span_dim"]
        assert report["seed"] == 0
        assert report["samples"] > 0


def test_verify_generation_report_shape():
    report = verify_generation((2,), (2, 2), 1, seed=7)
    assert set(report) == {
        "alpha",
        "d",
        "m",
        "oracle_dim",
        "span_dim",
        "match",
        "seed",
        "samples",
    }
    assert report["alpha"] == [2]
    assert report["d"] == [2, 2]
    assert report["seed"] == 7
