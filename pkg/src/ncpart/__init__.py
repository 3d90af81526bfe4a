"""Simply generated non-crossing partitions.

Random non-crossing partitions of {1..n} weighted by a product over block
sizes, studied through their plane-tree images: bijections, exact and
asymptotic enumeration, exact sampling, block statistics and their limit
laws, the free-probability support-edge solver, and chord geometry with
SVG rendering.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from ._kernels import HAVE_COMPILED
from .bijections import (
    b_transform,
    dual_tree_bullet,
    dual_tree_circ,
    js_forward,
    kreweras,
    p_bullet,
    p_circ,
    partition_from_walk,
    t_bullet,
    t_circ,
)
from .core import (
    LukaWalk,
    NCPartition,
    PlaneTree,
    TwoTypeTree,
    lukasiewicz_path,
    make_tree,
    make_walk,
    tree_from_walk,
    validate_partition,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "HAVE_COMPILED",
    "LukaWalk",
    "NCPartition",
    "PlaneTree",
    "TwoTypeTree",
    "__version__",
    "b_transform",
    "dual_tree_bullet",
    "dual_tree_circ",
    "js_forward",
    "kreweras",
    "lukasiewicz_path",
    "make_tree",
    "make_walk",
    "p_bullet",
    "p_circ",
    "partition_from_walk",
    "t_bullet",
    "t_circ",
    "tree_from_walk",
    "validate_partition",
]
