"""Exact Z/2-index computations and discrete Borsuk-Ulam checkers for simplicial complexes."""

from __future__ import annotations

from .cohomology import (
    GF2,
    INT,
    Cochain,
    betti2,
    class_is_zero,
    coboundary,
    cohomology_basis,
    cup,
    induced_map,
    integer_cohomology,
    pullback,
    restriction_is_trivial,
)
from .complex import (
    EquivariantComplex,
    FreeInvolution,
    SimplicialComplex,
    SimplicialMap,
    check_free_involution,
    check_simplicial_map,
    classify_pseudomanifold,
    equivariant,
    orient,
    validate_complex,
)
from .constructions import (
    barycentric_subdivision,
    camomile,
    connected_sum_double,
    cross_polytope_sphere,
    extend_equivariantly,
    hemisphere_map,
    suspension,
)
from .degree import axis_projection, degree_int, degree_mod2, odd_degree_check, pl_zeros, PLMap
from .errors import YangdexError
from .index import but_certificate, characteristic_cocycle, hind2, quotient, relative_hypothesis
from .lemmas import (
    CoverFamily,
    PointConfiguration,
    complementary_edges,
    cover_check,
    fan_simplices,
    kakutani_pl_zero,
    labeling,
    pn_witness,
    shashkin_count,
)

__version__ = "0.1.0"
