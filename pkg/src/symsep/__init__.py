"""Weakly separated collections, positroids, plabic tilings and graphs in
types A and C, with exhaustive checks of symmetric purity."""

from .collection import (
    Spine,
    WSCollection,
    complete_to_maximal,
    enumerate_maximal,
    enumerate_maximal_symmetric,
    find_spine,
    is_max_by_inclusion,
    is_max_symmetric_by_inclusion,
    is_symmetric,
    mutate,
    square_move_candidates,
)
from .config import Budget, load_budget
from .cyclic import (
    CyclicSet,
    Handedness,
    PairType,
    bar,
    handedness,
    is_admissible,
    is_pair_free,
    is_weakly_separated,
)
from .errors import BudgetError, DomainError, StructuralError
from .plabic import PlabicGraph, dual_graph, face_labels, is_reduced, trip_permutation
from .positroid import (
    Color,
    DecoratedPermutation,
    GrassmannNecklace,
    Positroid,
    necklace_from_perm,
    perm_from_necklace,
    top_cell_perm,
    uniform_perm,
)
from .tiling import PlabicTiling, build_tiling, render_svg

__version__ = "0.1.0"
