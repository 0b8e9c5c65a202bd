"""limitset-lab: executable limit-set theory for nets of subsets.

Exact computation of limit sets, Kuratowski limits, semi-distances and
asymptotic compactness properties over three backends (finite topological
spaces, rational pseudo-metric spaces, cell grids), with property-based
verification suites pairing every symbolic answer with a brute-force
oracle.
"""

from .directed_sets import (ZNN, DirectedOrder, EventuallyPeriodicSet,
                            FiniteOrder, IndexMap, NonnegativeIntegers,
                            ProductOrder, is_cofinal, is_directed,
                            is_monotone_final_map, monotonize_final_sequence,
                            product_order, top_element)
from .errors import (LimitsetError, MalformedInputError, MembershipError,
                     PreconditionError, SizeLimitError, UndefinedCaseError,
                     UnsupportedRuleError)
from .finite_topology import (SIERPINSKI, FiniteSpace, closure,
                              discrete_space, enumerate_spaces,
                              indiscrete_space, is_hausdorff,
                              is_neighborhood, is_pseudometrizable,
                              is_regular, separate_compact_from_point)
from .pseudometric_core import (FinitePseudoMetric, RationalPointSpace,
                                ball_of_set, compact_inner_radius,
                                kuratowski_limits, point_set_distance,
                                semidistance)
from .rationals import INFINITY, ExtendedRational, as_point
from .semiflow_cells import (CellGrid, DiscreteSemiflow, OmegaResult,
                             attraction_trace_check, cell_image,
                             omega_limit_cells)
from .setvalued_maps import (SetValuedMap, image, is_lsc_at, is_usc_at,
                             lsc_via_semidistance)
from .subset_nets import (AffineEscape, GeometricConverge, NetAnalysis,
                          Periodic, SubsetNet, Verdict, analyze,
                          below_iff_semidistance, cluster_set,
                          converges_from_above, converges_from_below,
                          eventually_in, frequently_in,
                          is_asymptotically_seq_compact,
                          is_eventually_lagrange_stable,
                          is_limit_set_compact,
                          is_weakly_asymptotically_seq_compact, limit_set,
                          limit_set_horizon_oracle,
                          semidistance_convergence_check,
                          sequential_limit_set)

__version__ = "0.1.0"
