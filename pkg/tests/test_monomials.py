import itertools
import random

import pytest

from localinv.errors import ValidationError
from localinv.evaluation import evaluate, evaluate_simple
from localinv.monomials import (
    canonicalize,
    enumerate_generators,
    factor,
    from_json_dict,
    girth,
    girth_filter,
    is_connected,
    monomials_equal,
    multidegree,
    position_components,
    product,
    relabel_positions,
    render_text,
    restitution,
    segre_equivalent,
    to_json_dict,
    trace_monomial,
    unit_monomial,
)
from localinv.perms import all_permutations, parse_cycles
from localinv.tensors import random_endotuple, random_simple_endos


def mono(labels, *cycle_strs):
    k = len(labels)
    return trace_monomial(labels, [parse_cycles(s, size=k) for s in cycle_strs])


SPLITTING_EXAMPLE = mono([1, 2, 1], "(1 2)(3)", "(1)(2 3)")
UNSPLITTABLE_EXAMPLE = mono([2, 1, 1], "(1 2)(3)", "(1)(2 3)")


def test_multidegree():
    assert multidegree(mono([1], "id", "id")) == (1,)
    assert multidegree(SPLITTING_EXAMPLE) == (2, 1)
    assert multidegree(UNSPLITTABLE_EXAMPLE) == (2, 1)


def test_girth():
    t = mono([1, 1, 1], "id", "id")
    assert girth(t) == (1, 1)
    assert girth(mono([1, 1, 1], "(1 2)(3)", "(1)(2 3)")) == (2, 2)
    assert girth(mono([1, 1, 1], "(1 2 3)", "id")) == (3, 1)


def test_girth_filter():
    t23 = mono([1, 1, 1], "(1 2 3)", "(1 2 3)")
    assert girth_filter(t23, (2, 2)) is True  # 3 <= 4
    t5 = trace_monomial([1] * 5, [parse_cycles("(1 2 3 4 5)"), parse_cycles("id", size=5)])
    assert girth_filter(t5, (2, 2)) is False  # 5 > 4
    assert girth_filter(t23, (2, 2), use_small_dim=True) is True  # 3 <= binom(3,2)
    with pytest.raises(ValidationError):
        girth_filter(t23, (4, 2), use_small_dim=True)


def test_canonicalize_idempotent_and_sorted():
    rng = random.Random(5)
    for _ in range(60):
        k = rng.randint(1, 4)
        labels = [rng.randint(1, 2) for _ in range(k)]
        sigma = [rng.choice(all_permutations(k)) for _ in range(2)]
        t = trace_monomial(labels, sigma, m=2)
        c = canonicalize(t)
        assert c.labels == tuple(sorted(t.labels))
        assert canonicalize(c) == c


def test_canonicalize_of_canonical_is_identity():
    t = canonicalize(UNSPLITTABLE_EXAMPLE)
    assert canonicalize(t) == t
    t1 = mono([1], "id", "id")
    assert canonicalize(t1) == t1


def test_canonicalize_preserves_evaluation():
    # exhaustive relabeling search agrees with evaluation at random points
    rng = random.Random(11)
    for _ in range(10):
        k = rng.randint(1, 3)
        labels = [rng.randint(1, 2) for _ in range(k)]
        sigma = [rng.choice(all_permutations(k)) for _ in range(2)]
        t = trace_monomial(labels, sigma, m=2)
        c = canonicalize(t)
        for trial in range(5):
            endos = random_endotuple((2, 2), 2, rng=rng)
            assert evaluate(t, endos) == evaluate(c, endos)


def test_canonicalize_mixed_label_example():
    # (2,1,1) sorts to (1,1,2) with conjugated wiring
    c = canonicalize(UNSPLITTABLE_EXAMPLE)
    assert c.labels == (1, 1, 2)
    rng = random.Random(3)
    for _ in range(5):
        endos = random_endotuple((2, 2), 2, rng=rng)
        assert evaluate(UNSPLITTABLE_EXAMPLE, endos) == evaluate(c, endos)


def test_relabel_equivalent_monomials_canonicalize_identically():
    rng = random.Random(7)
    for _ in range(40):
        k = rng.randint(1, 4)
        labels = [rng.randint(1, 2) for _ in range(k)]
        sigma = [rng.choice(all_permutations(k)) for _ in range(2)]
        t = trace_monomial(labels, sigma, m=2)
        pi = rng.choice(all_permutations(k))
        assert monomials_equal(t, relabel_positions(t, pi))


def test_relabeling_preserves_evaluation():
    # includes trace cyclicity: rotating a cycle's start is a relabeling
    rng = random.Random(13)
    for _ in range(10):
        k = rng.randint(1, 3)
        labels = [rng.randint(1, 2) for _ in range(k)]
        sigma = [rng.choice(all_permutations(k)) for _ in range(2)]
        t = trace_monomial(labels, sigma, m=2)
        pi = rng.choice(all_permutations(k))
        t2 = relabel_positions(t, pi)
        endos = random_endotuple((2, 2), 2, rng=rng)
        assert evaluate(t, endos) == evaluate(t2, endos)


def test_factor_example_pair():
    fs = factor(SPLITTING_EXAMPLE)
    assert len(fs) == 2
    assert sorted(f.size for f in fs) == [1, 2]
    small = next(f for f in fs if f.size == 1)
    big = next(f for f in fs if f.size == 2)
    assert small.labels == (1,) and small.sigma == ((1,), (1,))
    assert big.labels == (1, 2) and big.sigma == ((2, 1), (2, 1))
    # the connected partner does not factor
    assert factor(UNSPLITTABLE_EXAMPLE) == [canonicalize(UNSPLITTABLE_EXAMPLE)]
    assert is_connected(UNSPLITTABLE_EXAMPLE)
    assert not is_connected(SPLITTING_EXAMPLE)


def test_factor_identity_wiring_splits_completely():
    t = mono([1, 1, 1], "id", "id")
    fs = factor(t)
    assert len(fs) == 3
    assert all(f.size == 1 for f in fs)


def test_factor_product_identity_on_simple_tensors():
    # the per-wire regrouping identity holds on Kronecker inputs
    rng = random.Random(23)
    for labels, s1, s2 in [
        ([1, 2, 1], "(1 2)(3)", "(1)(2 3)"),
        ([2, 1, 1], "(1 2)(3)", "(1)(2 3)"),
        ([1, 1, 1], "(1 2 3)", "id"),
        ([1, 1], "(1 2)", "id"),
        ([1, 2], "(1 2)", "(1 2)"),
    ]:
        t = mono(labels, s1, s2)
        fs = factor(t)
        for _ in range(5):
            simples = random_simple_endos((2, 2), 2, rng=rng)
            lhs = evaluate_simple(t, simples)
            rhs = 1
            for f in fs:
                rhs *= evaluate_simple(f, simples)
            assert lhs == rhs


def test_factor_enumerated_simple_identity():
    rng = random.Random(29)
    for alpha in [(2,), (1, 1), (3,), (2, 1)]:
        for t in enumerate_generators(alpha, (2, 2)):
            fs = factor(t)
            simples = random_simple_endos((2, 2), len(alpha), rng=rng)
            lhs = evaluate_simple(t, simples)
            rhs = 1
            for f in fs:
                rhs *= evaluate_simple(f, simples)
            assert lhs == rhs
            # factors multiply back to the same per-wire necklaces
            prod = fs[0]
            for f in fs[1:]:
                prod = product(prod, f)
            assert segre_equivalent(prod, t)


def test_position_components():
    assert position_components(SPLITTING_EXAMPLE) == [(1, 2, 3)]
    t = mono([1, 1], "id", "id")
    assert position_components(t) == [(1,), (2,)]
    t2 = mono([1, 1, 1, 1], "(1 2)(3 4)", "(1 2)(3 4)")
    assert position_components(t2) == [(1, 2), (3, 4)]


def test_product_unit_and_structure():
    t = UNSPLITTABLE_EXAMPLE
    u = unit_monomial(2, m=2)
    assert product(t, u).key() == t.key()
    assert product(u, t).key() == t.key()
    p = product(t, trace_monomial([1, 1], [(2, 1), (1, 2)], m=2))
    assert p.labels == (2, 1, 1, 1, 1)
    assert p.sigma[0] == (2, 1, 3, 5, 4)


def test_product_mismatch_errors():
    with pytest.raises(ValidationError):
        product(mono([1], "id", "id"), trace_monomial([1], [(1,)], m=1))
    with pytest.raises(ValidationError):
        product(mono([1], "id"), mono([1], "id", "id"))


def test_product_evaluation_homomorphism():
    rng = random.Random(31)
    for _ in range(10):
        k1, k2 = rng.randint(1, 2), rng.randint(1, 2)
        t1 = trace_monomial(
            [rng.randint(1, 2) for _ in range(k1)],
            [rng.choice(all_permutations(k1)) for _ in range(2)],
            m=2,
        )
        t2 = trace_monomial(
            [rng.randint(1, 2) for _ in range(k2)],
            [rng.choice(all_permutations(k2)) for _ in range(2)],
            m=2,
        )
        endos = random_endotuple((2, 2), 2, rng=rng)
        assert evaluate(product(t1, t2), endos) == evaluate(t1, endos) * evaluate(
            t2, endos
        )
        # commutativity up to canonical form
        assert monomials_equal(product(t1, t2), product(t2, t1))
        # girth of a product is the componentwise max
        g = girth(product(t1, t2))
        assert g == tuple(max(a, b) for a, b in zip(girth(t1), girth(t2)))


def test_restitution():
    t = restitution([(2, 3, 1), (2, 3, 1)], (3,))
    assert t.labels == (1, 1, 1)
    assert t.sigma == ((2, 3, 1), (2, 3, 1))
    t2 = restitution([(2, 1, 3), (1, 3, 2)], (2, 1))
    assert t2.labels == (1, 1, 2)
    assert t2.sigma == ((2, 1, 3), (1, 3, 2))
    t3 = restitution([(2, 1), (1, 2)], (1, 1))
    assert t3.labels == (1, 2)
    with pytest.raises(ValidationError):
        restitution([(2, 1)], (3,))


def test_restitution_consistency_with_expanded_tuple():
    # evaluating the restitution equals the multilinear monomial on the
    # alpha-expanded tuple (repeat each input per its multiplicity)
    rng = random.Random(37)
    alpha = (2, 1)
    sigma = [rng.choice(all_permutations(3)) for _ in range(2)]
    t = restitution(sigma, alpha)
    multilinear = trace_monomial([1, 2, 3], sigma, m=3)
    for _ in range(5):
        endos = random_endotuple((2, 2), 2, rng=rng)
        expanded = (endos[0], endos[0], endos[1])
        assert evaluate(t, endos) == evaluate(multilinear, expanded)


def test_enumerate_generators_counts():
    assert len(enumerate_generators((1,), (2,))) == 1
    conn = enumerate_generators((2,), (2,), connected_only=True)
    assert len(conn) == 1 and conn[0].sigma == ((2, 1),)
    assert len(enumerate_generators((1, 1), (2, 2))) == 4
    assert enumerate_generators((0,), (2,)) == []


def test_enumerate_generators_dedup_matches_brute_force():
    # orbit count of simultaneous conjugation by the label stabilizer
    for alpha in [(2,), (1, 1), (3,), (2, 1), (1, 1, 1)]:
        k = sum(alpha)
        labels = []
        for i, a in enumerate(alpha):
            labels += [i + 1] * a
        keys = set()
        for sig in itertools.product(all_permutations(k), repeat=2):
            keys.add(canonicalize(trace_monomial(labels, sig, m=len(alpha))).key())
        got = enumerate_generators(alpha, (2, 2))
        assert len(got) == len(keys)
        assert [t.key() for t in got] == sorted(t.key() for t in got)


def test_enumerate_generators_girth_filter():
    t5 = enumerate_generators((5,), (2, 2), apply_girth=True)
    assert all(max(girth(t)) <= 4 for t in t5)
    t5_all = enumerate_generators((5,), (2, 2))
    assert len(t5_all) > len(t5)


def test_json_round_trip():
    for t in (SPLITTING_EXAMPLE, UNSPLITTABLE_EXAMPLE, mono([1], "id", "id")):
        obj = to_json_dict(t)
        back = from_json_dict(obj, m=t.m)
        assert back.labels == t.labels
        assert back.sigma == t.sigma
    assert to_json_dict(SPLITTING_EXAMPLE)["sigma"] == ["(1 2)(3)", "(1)(2 3)"]


def test_json_accepts_one_line_arrays():
    obj = {"M": [1, 2, 1], "sigma": [[2, 1, 3], "(1)(2 3)"]}
    t = from_json_dict(obj)
    assert t.sigma == ((2, 1, 3), (1, 3, 2))


def test_render_text():
    assert render_text(SPLITTING_EXAMPLE) == "Tr^{(1,2,1)}_{(12),(23)}"
    assert render_text(mono([1], "id", "id")) == "Tr^{(1)}_{id,id}"


def test_validation_errors():
    with pytest.raises(ValidationError):
        trace_monomial([1, 2], [(1, 2)], m=1)  # label 2 > m
    with pytest.raises(ValidationError):
        trace_monomial([1], [(1, 2)], m=1)  # domain mismatch
    with pytest.raises(ValidationError):
        trace_monomial([1], [], m=1)  # no wires


def test_unit_monomial_evaluates_to_one():
    endos = random_endotuple((2, 2), 1, seed=1)
    assert evaluate(unit_monomial(2), endos) == 1
