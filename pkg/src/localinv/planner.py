"""Contraction plans for trace-monomial evaluation.

The wiring graph has one tensor per position and one edge per (wire, position)
pair: edge (i, q) carries the summation index r[i][q], attached to the row of
position q and the column of position sigma_i^{-1}(q).  A plan is a sequence
of steps, each closing self-loops of a single tensor or merging two tensors
along all shared edges; executing it consumes every edge exactly once and
leaves a single scalar.

The planner is greedy on the smallest intermediate result, with a
deterministic lexicographic tie-break on the step encoding.  Step cost is the
size of the index space touched (open edges of both operands, shared edges
counted once); the naive evaluation cost it is compared against is
|M| * prod_i d_i^|M| (the multiply count of the defining sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iproduct

from .errors import ValidationError
from .monomials import TraceMonomial
from .perms import inverse
from .tensors import check_endotuple, strides_of

Edge = tuple[int, int]  # (wire index 0-based, row-side position 1-based)


@dataclass(frozen=True)
class PlanStep:
    kind: str  # "trace" | "merge"
    left: tuple[int, ...]  # positions of the (first) operand
    right: tuple[int, ...]  # positions of the second operand; () for trace
    closed: tuple[Edge, ...]  # edges consumed by this step
    result_open: tuple[Edge, ...]
    cost: int
    result_size: int


@dataclass(frozen=True)
class ContractionPlan:
    labels: tuple[int, ...]
    sigma: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    steps: tuple[PlanStep, ...]
    total_cost: int
    peak_size: int
    naive_cost: int


def _edges_of_position(t: TraceMonomial, p: int) -> tuple[Edge, ...]:
    edges = {(i, p) for i in range(t.n)}
    edges.update((i, t.sigma[i][p - 1]) for i in range(t.n))
    return tuple(sorted(edges))


def _edge_endpoints(t: TraceMonomial, e: Edge) -> tuple[int, int]:
    i, q = e
    return (q, inverse(t.sigma[i])[q - 1])


def _open_edges(t: TraceMonomial, positions: frozenset[int]) -> tuple[Edge, ...]:
    out = []
    for i in range(t.n):
        for q in range(1, t.size + 1):
            a, b = _edge_endpoints(t, (i, q))
            if (a in positions) != (b in positions):
                out.append((i, q))
    return tuple(sorted(out))


def _space(dims, edges) -> int:
    return math.prod(dims[i] for i, _ in edges) if edges else 1


def plan_contraction(
    t: TraceMonomial, dims, m_rank_hint: int | None = None
) -> ContractionPlan:
    """Greedy pairwise contraction plan for evaluating ``t`` at ``dims``.

    ``m_rank_hint`` is accepted for callers that know a decomposition rank of
    their inputs; the dense planner currently ignores it.
    """
    dims = tuple(dims)
    if len(dims) != t.n:
        raise ValidationError(f"dimension vector length {len(dims)} != n = {t.n}")
    naive = t.size * math.prod(d**t.size for d in dims) if t.size else 1
    steps: list[PlanStep] = []
    tensors: dict[frozenset[int], tuple[Edge, ...]] = {}
    for p in range(1, t.size + 1):
        group = frozenset({p})
        tensors[group] = _open_edges(t, group)
        loops = tuple(
            e for e in _edges_of_position(t, p) if e not in tensors[group]
        )
        if loops:
            open_after = tensors[group]
            steps.append(
                PlanStep(
                    kind="trace",
                    left=(p,),
                    right=(),
                    closed=loops,
                    result_open=open_after,
                    cost=_space(dims, open_after + loops),
                    result_size=_space(dims, open_after),
                )
            )
    while len(tensors) > 1:
        best = None
        groups = sorted(tensors, key=sorted)
        sharing = []
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                ga, gb = groups[a], groups[b]
                shared = tuple(e for e in tensors[ga] if e in set(tensors[gb]))
                if shared:
                    sharing.append((ga, gb, shared))
        if not sharing:  # disconnected leftovers are scalars: multiply pairwise
            sharing = [(groups[0], groups[1], ())]
        for ga, gb, shared in sharing:
            union_edges = set(tensors[ga]) | set(tensors[gb])
            open_after = tuple(sorted(union_edges - set(shared)))
            size = _space(dims, open_after)
            cost = _space(dims, tuple(union_edges))
            key = (size, tuple(sorted(ga)), tuple(sorted(gb)))
            if best is None or key < best[0]:
                best = (key, ga, gb, shared, open_after, size, cost)
        _, ga, gb, shared, open_after, size, cost = best
        steps.append(
            PlanStep(
                kind="merge",
                left=tuple(sorted(ga)),
                right=tuple(sorted(gb)),
                closed=shared,
                result_open=open_after,
                cost=cost,
                result_size=size,
            )
        )
        del tensors[ga], tensors[gb]
        tensors[ga | gb] = open_after
    total = sum(s.cost for s in steps)
    peak = max((s.result_size for s in steps), default=1)
    return ContractionPlan(
        labels=t.labels,
        sigma=t.sigma,
        dims=dims,
        steps=tuple(steps),
        total_cost=total,
        peak_size=peak,
        naive_cost=naive,
    )


def optimal_contraction_cost(t: TraceMonomial, dims) -> int:
    """Exhaustive minimum total cost over contraction trees (<= 8 positions).

    Planner-quality oracle only; cost model matches plan_contraction.
    """
    dims = tuple(dims)
    k = t.size
    if k > 8:
        raise ValidationError("exhaustive search limited to 8 positions")
    if k == 0:
        return 1
    positions = list(range(1, k + 1))

    def openset(mask: int) -> frozenset[Edge]:
        group = frozenset(p for j, p in enumerate(positions) if mask >> j & 1)
        return frozenset(_open_edges(t, group))

    base_cost = {}
    opens = {}
    for j, p in enumerate(positions):
        mask = 1 << j
        opens[mask] = openset(mask)
        loops = [e for e in _edges_of_position(t, p) if e not in opens[mask]]
        base_cost[mask] = _space(dims, tuple(opens[mask]) + tuple(loops)) if loops else 0

    best: dict[int, int] = dict(base_cost)
    full = (1 << k) - 1
    for mask in range(1, full + 1):
        if mask in base_cost:
            continue
        opens[mask] = openset(mask)
        cheapest = None
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:  # each split once
                merge = _space(dims, tuple(opens[sub] | opens[other]))
                cand = best[sub] + best[other] + merge
                if cheapest is None or cand < cheapest:
                    cheapest = cand
            sub = (sub - 1) & mask
        best[mask] = cheapest
    return best[full]


def evaluate_with_plan(t: TraceMonomial, endos, plan: ContractionPlan) -> Fraction:
    """Execute a plan with exact arithmetic; equals evaluate(t, endos)."""
    tup = check_endotuple(endos)
    dims = tup[0].dims
    if (plan.labels, plan.sigma) != (t.labels, t.sigma) or plan.dims != dims:
        raise ValidationError("plan does not match this monomial and dimension vector")
    if max(t.labels, default=0) > len(tup):
        raise ValidationError("not enough inputs for the monomial's labels")
    if t.size == 0:
        return Fraction(1)
    strides = strides_of(dims)

    # tensor value = (edge tuple, dict assignment-tuple -> Fraction)
    live: dict[frozenset[int], tuple[tuple[Edge, ...], dict]] = {}
    for p in range(1, t.size + 1):
        edges = _edges_of_position(t, p)
        mat = tup[t.labels[p - 1] - 1].entries
        data = {}
        pos = {e: j for j, e in enumerate(edges)}
        for assign in _iproduct(*(range(dims[i]) for i, _ in edges)):
            row = sum(assign[pos[(i, p)]] * strides[i] for i in range(t.n))
            col = sum(
                assign[pos[(i, t.sigma[i][p - 1])]] * strides[i] for i in range(t.n)
            )
            val = mat[row][col]
            if val:
                data[assign] = data.get(assign, Fraction(0)) + val
        live[frozenset({p})] = (edges, data)

    def contract(edges_a, data_a, edges_b, data_b, closed):
        keep_a = [j for j, e in enumerate(edges_a) if e not in closed]
        keep_b = [j for j, e in enumerate(edges_b) if e not in closed and e not in edges_a]
        out_edges = tuple(e for e in edges_a if e not in closed) + tuple(
            e for j, e in enumerate(edges_b) if j in set(keep_b)
        )
        shared_a = [j for j, e in enumerate(edges_a) if e in closed]
        shared_pos_b = {e: j for j, e in enumerate(edges_b)}
        out: dict = {}
        for ka, va in data_a.items():
            for kb, vb in data_b.items():
                if any(ka[j] != kb[shared_pos_b[edges_a[j]]] for j in shared_a):
                    continue
                key = tuple(ka[j] for j in keep_a) + tuple(kb[j] for j in keep_b)
                out[key] = out.get(key, Fraction(0)) + va * vb
        return out_edges, out

    def close_loops(edges, data, closed):
        # loop edges already constrain row == col at construction, so the
        # trace is just a marginalization over them
        keep = [j for j, e in enumerate(edges) if e not in closed]
        out_edges = tuple(edges[j] for j in keep)
        out: dict = {}
        for key, val in data.items():
            new = tuple(key[j] for j in keep)
            out[new] = out.get(new, Fraction(0)) + val
        return out_edges, out

    for step in plan.steps:
        left = frozenset(step.left)
        if step.kind == "trace":
            edges, data = live.pop(left)
            live[left] = close_loops(edges, data, set(step.closed))
        else:
            right = frozenset(step.right)
            if left not in live or right not in live:
                raise ValidationError("plan step references a missing intermediate")
            ea, da = live.pop(left)
            eb, db = live.pop(right)
            live[left | right] = contract(ea, da, eb, db, set(step.closed))

    if len(live) != 1:
        raise ValidationError("plan did not reduce to a single scalar")
    edges, data = next(iter(live.values()))
    if edges:
        raise ValidationError("plan left open edges")
    return data.get((), Fraction(0))
