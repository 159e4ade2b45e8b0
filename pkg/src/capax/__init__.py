"""Set functions on a finite ground set: Moebius, interaction and Banzhaf
transforms, exact bounds for normalized capacities, and exhaustive checks
over the {0,1}-valued vertices of the capacity polytope.
"""

from ._backend import BACKEND
from .bounds import (
    BoundSpec,
    alternating_binomial_sum,
    asymptotic_estimate,
    bound_spec,
    bound_table,
    extremal_lower,
    extremal_upper,
    symmetric_vertex,
    symmetric_vertex_mobius_at_n,
    vertex_mobius_matrix,
)
from .families import (
    Partition,
    basis,
    is_at_most_k_additive,
    is_p_symmetric_compatible,
    is_subset_of_indifference,
    minimal_additivity_order,
    symmetric_extremal_lower,
    symmetric_extremal_upper,
)
from .lattice import (
    CapacityCheckReport,
    CapaxError,
    GroundSet,
    ModeMismatchError,
    PreconditionError,
    SetFunction,
    derivative,
    mobius_via_derivative,
    monotonic_cover,
    parse_subset,
    permute,
    symmetric_part,
    validate_capacity,
)
from .transforms import (
    banzhaf,
    banzhaf_from_derivatives,
    bernoulli,
    interaction,
    interaction_from_derivatives,
    inverse_interaction,
    mobius,
    zeta,
)
from .verifier import enumerate_vertices, extremize, naive_transform_oracle, verify_derivative_maxima

__version__ = "0.1.0"
