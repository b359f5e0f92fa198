"""Exact-arithmetic toolkit for labeled moment polytopes.

The package validates labeled rational simple polytopes, computes the
orbifold structure group of every face, builds the associated fan, assembles
the reduction presentation (projection, kernel, level), decides equivalence
of two polytopes up to label-preserving translation and up to fan equality,
and computes Betti numbers by counting vertex indices against a generic
direction.  All computations use Python integers and fractions; nothing is
ever rounded.
"""

from .delzant import (
    DelzantData,
    KernelGroupInfo,
    ReductionReport,
    RegularityReport,
    build_construction,
    convex_samples,
    face_stabilizer,
    kernel_group,
    moment_level,
    sample_point,
    verify_reduction_invariants,
    verify_regular_level,
)
from .fan import Cone, Fan, build_fan, dual_cone, fan_to_json, fans_equal, make_cone
from .lattice import (
    FiniteAbelianGroup,
    HermiteDecomposition,
    SmithDecomposition,
    TRIVIAL_GROUP,
    det,
    elementary_divisors,
    format_rational,
    hermite_normal_form,
    kernel_basis,
    lattices_equal,
    parse_rational,
    primitive_vector,
    quotient_group,
    saturate,
    smith_normal_form,
    unimodular_inverse,
)
from .local_model import (
    IsotropyData,
    LocalCone,
    SliceWeights,
    isotropy_data,
    local_cone,
    slice_weights,
    structure_group,
)
from .morse import (
    MorseReport,
    is_generic,
    morse_inequality_check,
    morse_report,
    poincare_polynomial,
    random_generic_direction,
    vertex_index,
)
from .polytope import (
    Face,
    FormatError,
    HalfSpace,
    LabeledPolytope,
    ValidationError,
    edge_directions,
    enumerate_vertices,
    face_lattice,
    is_isomorphic,
    isomorphism_report,
    load_polytope,
    polytope_from_json,
    polytope_to_json,
    validate,
)

__version__ = "0.1.0"
