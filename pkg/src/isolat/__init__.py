"""Edge and vertex isoperimetry on Cayley graphs of Z^d."""

__version__ = "0.1.0"

from .asymptotics import compare_report, edge_bound, optimality_probe, vertex_bound, vertex_hull_volume
from .boundary import (
    BoundaryBreakdown,
    edge_boundary,
    edge_count,
    epsilon_close,
    frontier,
    line_classes,
    split_sides,
    vertex_boundary,
)
from .exact import BoundaryTable, brute_force_oracle, enumerate_connected, exact_table
from .lattice import (
    GeneratorSet,
    PointSet,
    canonical_form,
    components,
    iterated_sumset,
    l1_generators,
    linf_generators,
    minkowski_sum,
    push,
    push_word,
    translate,
    triangular_generators,
    validate_generators,
)
from .zonotope import EhrhartPolynomial, Zonotope, build_zonotope, contains, ehrhart, lattice_points, recurrence_check, z0
