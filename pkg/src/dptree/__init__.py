"""Double point trees of immersed spheres.

Library and CLI for the combinatorics of triple-point-free immersed spheres:
the double point tree data type with full validation, the degree-count vector
(basis arithmetic, image membership), the birth/death and split move calculus
with inverses and enumeration, canonical codes, bounded exhaustive
enumeration and reachability search, constructive realization of every
attainable vector, and extraction of trees from generating curves of surfaces
of revolution.
"""

from .canonical import canonical_code, canonical_hex, isomorphic
from .errors import (
    CurveError,
    GeometryError,
    InputError,
    InvalidTreeError,
    MoveNotApplicable,
    PreconditionError,
    ResourceLimitError,
)
from .explore import ReachResult, enumerate_trees, reachable
from .invariant import (
    InvariantVector,
    add,
    basis,
    in_image,
    invariant_of,
    reverse,
    scale,
    subtract,
    zero,
)
from .moves import (
    EBirth,
    EDeath,
    HMerge,
    HMove,
    MergeSide,
    Move,
    SplitSpec,
    apply_move,
    enumerate_applicable,
    enumerate_moves,
    invert_move,
)
from .realize import (
    building_block_f,
    building_block_g,
    decompose,
    f_merge_ids,
    g_merge_ids,
    realize,
)
from .revolution import (
    FaceSample,
    GeneratingCurve,
    PlanarCrossing,
    doubled_winding,
    orientation_sign,
    self_intersections,
    tree_of_revolution,
)
from .tree import (
    DoublePointTree,
    RelabelMap,
    ValidationReport,
    Violation,
    connected_sum,
    indegree,
    negate,
    validate,
)

__version__ = "0.1.0"
