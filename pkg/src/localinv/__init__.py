"""Trace-monomial invariants of endomorphism tuples under local conjugation.

Exact-rational library: enumerate the generalized trace monomials, evaluate
them on endomorphisms of a tensor product space, verify the centralizer and
generation identities with brute-force oracles, and compute the necklace-graded
Hilbert series with its degree bounds.
"""

from .errors import (
    LocalInvError,
    ReconstructionInconclusive,
    SizeGuardError,
    ValidationError,
)
from .evaluation import batch_evaluate, evaluate, evaluate_simple
from .hilbert import (
    BoundReport,
    PowerSeries,
    RationalFunction,
    check_pole_orders,
    degree_bounds,
    default_truncation,
    hadamard,
    hs_local,
    hs_single,
    reconstruct_rational,
    verify_bound_empirically,
)
from .kernels import backend_name
from .monomials import (
    TraceMonomial,
    canonicalize,
    enumerate_generators,
    factor,
    girth,
    girth_filter,
    is_connected,
    monomials_equal,
    multidegree,
    position_components,
    product,
    render_text,
    restitution,
    segre_equivalent,
    trace_monomial,
    unit_monomial,
)
from .perms import (
    cycle_decomposition,
    compose,
    enumerate_necklaces,
    euler_totient,
    format_cycles,
    inverse,
    necklace_count,
    parse_cycles,
)
from .planner import (
    ContractionPlan,
    evaluate_with_plan,
    optimal_contraction_cost,
    plan_contraction,
)
from .spanchecks import (
    commutant_dimension_mu,
    invariant_space_dimension,
    mu_matrix,
    rho_matrix,
    span_dimension_rho,
    trace_span_dimension,
    verify_generation,
)
from .tensors import (
    Endomorphism,
    LocalGroupElement,
    SimpleEndo,
    endomorphism,
    group_element,
    kron_expand,
    local_conjugate,
    random_endotuple,
    random_group_element,
    random_simple_endos,
    simple_endo,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
