"""Trace monomials: an ordered multiset of inputs plus one wiring permutation
per tensor factor.

A monomial has positions 1..k, a label ``M[p]`` in 1..m selecting which input
sits at position p, and permutations ``sigma[i]`` of the positions, one per
tensor factor ("wire").  Semantics are position-based: on each wire i the
column index of position p is contracted with the row index of position
``sigma[i](p)``, so the cycles of ``sigma[i]`` are the trace words of wire i
with labels read off through M.

Two monomials related by a position relabeling (conjugating every sigma[i] by
the same pi and permuting M accordingly) define the same function;
``canonicalize`` picks a unique representative of that class.

``factor`` implements the coarser, per-wire notion of factorization used for
degree bounds: the per-wire trace words regroup into sub-monomials with
matching multidegrees.  The resulting identity holds on simple (Kronecker
product) inputs, where evaluation depends only on each wire's multiset of
labeled necklaces; it is *not* in general an identity on arbitrary
endomorphism tuples, and position connectivity is the right notion for that
(see ``position_components``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ValidationError
from .perms import (
    Perm,
    all_permutations,
    check_multiset,
    check_permutation,
    cycle_decomposition,
    format_cycles,
    multidegree_of,
    multiset_for_degree,
    parse_cycles,
)


@dataclass(frozen=True)
class TraceMonomial:
    labels: tuple[int, ...]  # M: position -> label in 1..m
    sigma: tuple[Perm, ...]  # one permutation of the positions per wire
    m: int  # size of the label alphabet

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def size(self) -> int:
        return len(self.labels)

    def key(self) -> tuple:
        return (self.labels, self.sigma)


def trace_monomial(labels, sigma, m: int | None = None) -> TraceMonomial:
    """Validate and build a TraceMonomial.

    ``m`` defaults to the largest label present (1 for the empty monomial).
    """
    sig = tuple(check_permutation(w) for w in sigma)
    if not sig:
        raise ValidationError("a trace monomial needs at least one wire")
    mm = max(labels, default=1) if m is None else m
    ms = check_multiset(labels, mm)
    for w in sig:
        if len(w) != len(ms):
            raise ValidationError(
                f"sigma domain {len(w)} does not match |M| = {len(ms)}"
            )
    return TraceMonomial(ms, sig, mm)


def unit_monomial(n: int, m: int = 1) -> TraceMonomial:
    """The empty monomial (evaluates to 1)."""
    return TraceMonomial((), tuple(() for _ in range(n)), m)


def multidegree(t: TraceMonomial) -> tuple[int, ...]:
    return multidegree_of(t.labels, t.m)


def girth(t: TraceMonomial) -> tuple[int, ...]:
    """Per-wire maximum cycle length (all zeros for the empty monomial)."""
    if t.size == 0:
        return tuple(0 for _ in t.sigma)
    return tuple(max(len(c) for c in cycle_decomposition(w)) for w in t.sigma)


def girth_filter(t: TraceMonomial, dims, use_small_dim: bool = False) -> bool:
    """True iff every wire's largest cycle fits the per-factor bound.

    The default bound is d_i**2; with ``use_small_dim`` it is the sharper
    binomial(d_i+1, 2), which requires every d_i <= 3.
    """
    dims = tuple(dims)
    if len(dims) != t.n:
        raise ValidationError(f"dimension vector length {len(dims)} != n = {t.n}")
    if use_small_dim:
        if any(d > 3 for d in dims):
            raise ValidationError(
                "small-dimension girth bound only applies when all d_i <= 3"
            )
        bounds = tuple(d * (d + 1) // 2 for d in dims)
    else:
        bounds = tuple(d * d for d in dims)
    return all(s <= b for s, b in zip(girth(t), bounds))


def relabel_positions(t: TraceMonomial, pi: Perm) -> TraceMonomial:
    """Rename position p to pi(p); preserves the function being computed."""
    k = t.size
    if len(pi) != k:
        raise ValidationError("relabeling size mismatch")
    labels = [0] * k
    for p in range(1, k + 1):
        labels[pi[p - 1] - 1] = t.labels[p - 1]
    sigma = []
    for w in t.sigma:
        new = [0] * k
        for p in range(1, k + 1):
            new[pi[p - 1] - 1] = pi[w[p - 1] - 1]
        sigma.append(tuple(new))
    return TraceMonomial(tuple(labels), tuple(sigma), t.m)


def _label_blocks(sorted_labels: tuple[int, ...]) -> list[list[int]]:
    """Runs of equal labels, as lists of (1-based) positions."""
    blocks: list[list[int]] = []
    for p, lab in enumerate(sorted_labels, start=1):
        if blocks and sorted_labels[blocks[-1][0] - 1] == lab:
            blocks[-1].append(p)
        else:
            blocks.append([p])
    return blocks


def canonicalize(t: TraceMonomial) -> TraceMonomial:
    """Unique representative of the position-relabeling class of ``t``.

    M is sorted weakly increasing; among the relabelings that fix the sorted
    M, the one giving the lexicographically least sigma tuple wins.
    """
    k = t.size
    if k == 0:
        return t
    order = sorted(range(1, k + 1), key=lambda p: (t.labels[p - 1], p))
    pi0 = [0] * k
    for new, old in enumerate(order, start=1):
        pi0[old - 1] = new
    base = relabel_positions(t, tuple(pi0))

    best = None
    blocks = _label_blocks(base.labels)
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        tau = [0] * k
        for block, perm in zip(blocks, parts):
            for src, dst in zip(block, perm):
                tau[src - 1] = dst
        cand = relabel_positions(base, tuple(tau))
        if best is None or cand.sigma < best.sigma:
            best = cand
    return best


def monomials_equal(t1: TraceMonomial, t2: TraceMonomial) -> bool:
    """Canonical-form equality (sound, conservative proxy for function equality)."""
    return canonicalize(t1).key() == canonicalize(t2).key()


def product(t1: TraceMonomial, t2: TraceMonomial) -> TraceMonomial:
    """Concatenate multisets and let each wire act blockwise."""
    if t1.n != t2.n:
        raise ValidationError(f"wire count mismatch: {t1.n} vs {t2.n}")
    if t1.m != t2.m:
        raise ValidationError(f"label alphabet mismatch: {t1.m} vs {t2.m}")
    k1 = t1.size
    labels = t1.labels + t2.labels
    sigma = tuple(
        w1 + tuple(x + k1 for x in w2) for w1, w2 in zip(t1.sigma, t2.sigma)
    )
    return TraceMonomial(labels, sigma, t1.m)


def restitution(sigma, alpha) -> TraceMonomial:
    """Identify the slots of a multilinear monomial according to alpha.

    The positions keep their wiring; position p gets label i when it falls in
    the i-th block of sizes alpha[i], i.e. M = (1,..,1,2,..,2,...).
    """
    labels = multiset_for_degree(alpha)
    sig = tuple(check_permutation(w) for w in sigma)
    for w in sig:
        if len(w) != len(labels):
            raise ValidationError(
                f"sigma domain {len(w)} != |alpha| = {len(labels)}"
            )
    return TraceMonomial(labels, sig, len(tuple(alpha)))


# -- connectivity and factorization ------------------------------------------


def position_components(t: TraceMonomial) -> list[tuple[int, ...]]:
    """Connected components of positions under all wires' cycles.

    Monomials whose positions split are exactly the products of smaller
    monomials (an identity on every endomorphism tuple).
    """
    k = t.size
    parent = list(range(k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in t.sigma:
        for p in range(1, k + 1):
            a, b = find(p), find(w[p - 1])
            if a != b:
                parent[a] = b
    comps: dict[int, list[int]] = {}
    for p in range(1, k + 1):
        comps.setdefault(find(p), []).append(p)
    return [tuple(c) for c in sorted(comps.values())]


def _wire_cycles(t: TraceMonomial) -> list[list[tuple[int, ...]]]:
    return [cycle_decomposition(w) if t.size else [] for w in t.sigma]


def _cycle_degree(t: TraceMonomial, cyc: tuple[int, ...]) -> tuple[int, ...]:
    deg = [0] * t.m
    for p in cyc:
        deg[t.labels[p - 1] - 1] += 1
    return tuple(deg)


def _sub_multiset_with_degree(items, target, m):
    """First (in index order) subset of (index, degree) pairs summing to target."""
    zero = tuple([0] * m)

    def rec(i, remaining, chosen):
        if remaining == zero:
            return list(chosen)
        if i == len(items):
            return None
        idx, deg = items[i]
        if all(d <= r for d, r in zip(deg, remaining)):
            got = rec(i + 1, tuple(r - d for r, d in zip(remaining, deg)), chosen + [idx])
            if got is not None:
                return got
        return rec(i + 1, remaining, chosen)

    return rec(0, target, [])


def _assemble(t: TraceMonomial, chosen: list[list[int]], cycles) -> TraceMonomial:
    """Build a monomial from one chosen cycle set per wire (equal multidegrees)."""
    delta = [0] * t.m
    for ci in chosen[0]:
        for d, x in enumerate(_cycle_degree(t, cycles[0][ci])):
            delta[d] += x
    labels = multiset_for_degree(delta)
    by_label: dict[int, list[int]] = {}
    for pos, lab in enumerate(labels, start=1):
        by_label.setdefault(lab, []).append(pos)
    sigma = []
    for i in range(t.n):
        queues = {lab: list(ps) for lab, ps in by_label.items()}
        new_cycles = []
        for ci in sorted(chosen[i]):
            cyc = cycles[i][ci]
            new_cycles.append(tuple(queues[t.labels[p - 1]].pop(0) for p in cyc))
        images = list(range(1, len(labels) + 1))
        for cyc in new_cycles:
            for j, x in enumerate(cyc):
                images[x - 1] = cyc[(j + 1) % len(cyc)]
        sigma.append(tuple(images))
    return TraceMonomial(labels, tuple(sigma), t.m)


def factor(t: TraceMonomial) -> list[TraceMonomial]:
    """Split into unfactorable monomials by regrouping each wire's trace words.

    A split is admissible when every wire has a sub-multiset of cycles with
    one common multidegree; splitting repeats until no block splits further.
    The factors multiply back to ``t`` wire-by-wire (same labeled necklaces
    per wire), hence agree with ``t`` on all simple tensor inputs.
    """
    if t.size == 0:
        return []
    cycles = _wire_cycles(t)

    def split(block: list[list[int]]) -> list[list[list[int]]]:
        first = block[0]
        n_first = len(first)
        for r in range(1, n_first):
            for combo in itertools.combinations(range(n_first), r):
                target = [0] * t.m
                for j in combo:
                    for d, x in enumerate(_cycle_degree(t, cycles[0][first[j]])):
                        target[d] += x
                target = tuple(target)
                chosen = [[first[j] for j in combo]]
                ok = True
                for i in range(1, t.n):
                    items = [(ci, _cycle_degree(t, cycles[i][ci])) for ci in block[i]]
                    sub = _sub_multiset_with_degree(items, target, t.m)
                    if sub is None:
                        ok = False
                        break
                    chosen.append(sub)
                if ok:
                    rest = [
                        [ci for ci in block[i] if ci not in set(chosen[i])]
                        for i in range(t.n)
                    ]
                    return split(chosen) + split(rest)
        return [block]

    start = [list(range(len(cycles[i]))) for i in range(t.n)]
    blocks = split(start)
    factors = [canonicalize(_assemble(t, blk, cycles)) for blk in blocks]
    return sorted(factors, key=TraceMonomial.key)


def is_connected(t: TraceMonomial) -> bool:
    """Unfactorable in the sense of ``factor`` (empty monomial counts as not)."""
    return len(factor(t)) == 1


def wire_necklaces(t: TraceMonomial) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per wire, the sorted multiset of label cycles up to rotation.

    Evaluation on simple tensors depends only on this data, so equality of
    it ("Segre equivalence") is the right equivalence for factor products.
    """
    out = []
    for wire in _wire_cycles(t):
        necks = []
        for cyc in wire:
            word = tuple(t.labels[p - 1] for p in cyc)
            best = min(word[r:] + word[:r] for r in range(len(word)))
            necks.append(best)
        out.append(tuple(sorted(necks)))
    return tuple(out)


def segre_equivalent(t1: TraceMonomial, t2: TraceMonomial) -> bool:
    return t1.n == t2.n and wire_necklaces(t1) == wire_necklaces(t2)


# -- enumeration ---------------------------------------------------------------


def enumerate_generators(
    alpha,
    dims,
    connected_only: bool = False,
    apply_girth: bool = False,
    small_dim: bool = False,
) -> list[TraceMonomial]:
    """All canonical monomials of multidegree alpha, in canonical-key order.

    ``apply_girth`` drops monomials whose girth exceeds the per-factor bound
    for ``dims`` (the small-dimension variant with ``small_dim``);
    ``connected_only`` keeps only unfactorable monomials.
    """
    alpha = tuple(alpha)
    dims = tuple(dims)
    labels = multiset_for_degree(alpha)
    k = len(labels)
    if k == 0:
        return []
    seen: dict[tuple, TraceMonomial] = {}
    perms = all_permutations(k)
    for sig in itertools.product(perms, repeat=len(dims)):
        cand = canonicalize(TraceMonomial(labels, sig, len(alpha)))
        seen.setdefault(cand.key(), cand)
    out = sorted(seen.values(), key=TraceMonomial.key)
    if apply_girth:
        out = [t for t in out if girth_filter(t, dims, use_small_dim=small_dim)]
    if connected_only:
        out = [t for t in out if is_connected(t)]
    return out


# -- serialization -------------------------------------------------------------


def to_json_dict(t: TraceMonomial) -> dict:
    return {
        "M": list(t.labels),
        "sigma": [format_cycles(w) if w else "()" for w in t.sigma],
    }


def from_json_dict(obj: dict, m: int | None = None) -> TraceMonomial:
    """Accepts cycle-notation strings or one-line arrays for each wire."""
    try:
        labels = [int(x) for x in obj["M"]]
        raw_sigma = list(obj["sigma"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad monomial object: {exc}") from None
    k = len(labels)
    sigma = []
    for s in raw_sigma:
        if isinstance(s, str):
            sigma.append(parse_cycles(s, size=k) if k else ())
        else:
            sigma.append(tuple(int(x) for x in s))
    mm = obj.get("m", m)
    return trace_monomial(labels, sigma, m=mm)


def render_text(t: TraceMonomial) -> str:
    """Compact display form: Tr^{(1,1,2)}_{(12),(23)}."""
    parts = []
    for w in t.sigma:
        cycles = [c for c in cycle_decomposition(w) if len(c) > 1] if t.size else []
        if not cycles:
            parts.append("id")
        elif t.size <= 9:
            parts.append("".join("(" + "".join(str(x) for x in c) + ")" for c in cycles))
        else:
            parts.append("".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles))
    return "Tr^{(%s)}_{%s}" % (",".join(str(x) for x in t.labels), ",".join(parts))
