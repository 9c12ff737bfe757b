"""Triangle solitaire workbench: fillings, orbits, paths, and TEP bases."""

from .core import (
    Move,
    Pattern,
    Point,
    apply_move,
    edges_of_triangle,
    legal_moves,
    line_pattern,
    neighbourhood,
    parse_pattern,
    pattern,
    render_ascii,
    render_pattern,
    size_n_triangle,
    triangle_at,
)
from .filling import (
    decompose,
    excess,
    excess_sets,
    fill,
    is_fill_matrix,
    maximal_excess_sets,
)
from .normalform import (
    NormalForm,
    line_with_excess,
    normal_form,
    realize,
    same_orbit,
)
from .pathfinder import (
    MoveSequence,
    edge_rotation,
    path_between,
    replay,
    to_normal_form,
)
from .explorer import (
    check_orbit_size_bounds,
    diameter,
    enumerate_fill_matrices,
    orbit_bfs,
    orbit_size,
    random_walk,
)
from .tep import TepFamily, basis_change, compile_basis_change, complete, is_basis

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
