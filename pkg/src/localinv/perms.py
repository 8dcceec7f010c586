"""Permutations, cycle decompositions, multidegrees and necklace counting.

Permutations are 1-based throughout and represented in one-line "word"
notation: the tuple ``(p(1), ..., p(k))``.  Cycle decompositions list every
cycle, fixed points included as 1-cycles; each cycle starts at its minimal
element and cycles are sorted by minimal element, which makes the printed
form unique.

An ordered multiset is a tuple of labels in ``{1, ..., m}``; its multidegree
is the length-m tuple of label multiplicities.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .errors import ValidationError

Perm = tuple[int, ...]


def check_permutation(images: Sequence[int]) -> Perm:
    """Validate one-line notation and return it as a tuple.

    >>> check_permutation([2, 1, 3])
    (2, 1, 3)
    """
    word = tuple(images)
    k = len(word)
    seen = [False] * k
    for x in word:
        if not isinstance(x, int) or not 1 <= x <= k or seen[x - 1]:
            raise ValidationError(f"not a permutation of 1..{k}: {word!r}")
        seen[x - 1] = True
    return word


def identity_perm(k: int) -> Perm:
    return tuple(range(1, k + 1))


def is_identity(p: Sequence[int]) -> bool:
    return all(v == i + 1 for i, v in enumerate(p))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """(p o q)(x) = p(q(x)); right-to-left like function composition."""
    if len(p) != len(q):
        raise ValidationError(f"size mismatch: {len(p)} vs {len(q)}")
    return tuple(p[x - 1] for x in q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def cycle_decomposition(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles of p, fixed points included as 1-cycles.

    >>> cycle_decomposition((2, 1, 3))
    [(1, 2), (3,)]
    >>> cycle_decomposition((2, 3, 1))
    [(1, 2, 3)]
    """
    word = check_permutation(p)
    visited = [False] * len(word)
    cycles = []
    for start in range(1, len(word) + 1):
        if visited[start - 1]:
            continue
        cyc = []
        x = start
        while not visited[x - 1]:
            visited[x - 1] = True
            cyc.append(x)
            x = word[x - 1]
        cycles.append(tuple(cyc))
    return cycles


def cycles_to_images(cycles: Iterable[Sequence[int]], size: int) -> Perm:
    """Rebuild one-line notation from a cycle list."""
    images = list(range(1, size + 1))
    seen = set()
    for cyc in cycles:
        for i, x in enumerate(cyc):
            if not 1 <= x <= size or x in seen:
                raise ValidationError(f"bad cycle entry {x} for size {size}")
            seen.add(x)
            images[x - 1] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


def max_cycle_length(p: Sequence[int]) -> int:
    return max(len(c) for c in cycle_decomposition(p))


def format_cycles(p: Sequence[int]) -> str:
    """Canonical cycle notation with whitespace-separated entries: "(1 2)(3)"."""
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycle_decomposition(p))


def parse_cycles(text: str, size: int | None = None) -> Perm:
    """Parse cycle notation like "(1 2)(3)" into one-line notation.

    Points not mentioned are fixed; ``size`` extends the domain beyond the
    largest point mentioned (needed to represent trailing fixed points).
    """
    s = text.strip()
    if s in ("", "id", "()"):
        if size is None:
            raise ValidationError("identity needs an explicit size")
        return identity_perm(size)
    cycles: list[list[int]] = []
    if not s.startswith("(") or not s.endswith(")"):
        raise ValidationError(f"bad cycle notation: {text!r}")
    for chunk in s[1:-1].split(")("):
        try:
            cyc = [int(tok) for tok in chunk.replace(",", " ").split()]
        except ValueError:
            raise ValidationError(f"bad cycle notation: {text!r}") from None
        if not cyc:
            raise ValidationError(f"empty cycle in {text!r}")
        cycles.append(cyc)
    top = max(x for cyc in cycles for x in cyc)
    k = top if size is None else size
    if k < top:
        raise ValidationError(f"cycle entry {top} exceeds size {k}")
    return check_permutation(cycles_to_images(cycles, k))


def all_permutations(k: int) -> list[Perm]:
    return [tuple(w) for w in itertools.permutations(range(1, k + 1))]


# -- multisets, multidegrees, dimension vectors ------------------------------


def check_multiset(entries: Sequence[int], m: int) -> tuple[int, ...]:
    ms = tuple(entries)
    for x in ms:
        if not isinstance(x, int) or not 1 <= x <= m:
            raise ValidationError(f"multiset entry {x!r} outside 1..{m}")
    return ms


def multidegree_of(entries: Sequence[int], m: int) -> tuple[int, ...]:
    """Multiplicity of each label 1..m in the ordered multiset.

    >>> multidegree_of((1, 2, 1), 2)
    (2, 1)
    """
    ms = check_multiset(entries, m)
    deg = [0] * m
    for x in ms:
        deg[x - 1] += 1
    return tuple(deg)


def multiset_for_degree(alpha: Sequence[int]) -> tuple[int, ...]:
    """Weakly increasing multiset (1,..,1,2,..,2,...) with alpha[i] copies of i+1."""
    out = []
    for i, a in enumerate(alpha):
        if a < 0:
            raise ValidationError(f"negative multidegree entry {a}")
        out.extend([i + 1] * a)
    return tuple(out)


def check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    d = tuple(dims)
    if not d or any(not isinstance(x, int) or x < 1 for x in d):
        raise ValidationError(f"dimension vector must be positive integers, got {d!r}")
    return d


def total_dim(dims: Sequence[int]) -> int:
    return math.prod(check_dims(dims))


# -- necklaces ---------------------------------------------------------------


def euler_totient(n: int) -> int:
    """phi(n) via the product over prime divisors.

    >>> [euler_totient(n) for n in (1, 2, 12)]
    [1, 1, 4]
    """
    if n < 1:
        raise ValidationError(f"totient needs n >= 1, got {n}")
    phi = n
    rem = n
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            phi -= phi // p
            while rem % p == 0:
                rem //= p
        p += 1
    if rem > 1:
        phi -= phi // rem
    return phi


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def necklace_count(m: int, k: int) -> int:
    """Number of m-ary necklaces of length k: (1/k) sum_{l|k} phi(l) m^(k/l).

    >>> necklace_count(2, 3)
    4
    """
    if m < 1 or k < 1:
        raise ValidationError(f"necklace_count needs m,k >= 1, got {m},{k}")
    total = sum(euler_totient(l) * m ** (k // l) for l in divisors(k))
    q, r = divmod(total, k)
    if r:
        raise ValidationError(f"totient sum {total} not divisible by {k}")
    return q


def enumerate_necklaces(m: int, k: int) -> list[tuple[int, ...]]:
    """Lexicographically minimal representative of each rotation class.

    >>> enumerate_necklaces(2, 2)
    [(1, 1), (1, 2), (2, 2)]
    """
    if m < 1 or k < 1:
        raise ValidationError(f"enumerate_necklaces needs m,k >= 1, got {m},{k}")
    reps = []
    for word in itertools.product(range(1, m + 1), repeat=k):
        if all(word <= word[r:] + word[:r] for r in range(1, k)):
            reps.append(word)
    return reps
