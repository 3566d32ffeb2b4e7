"""Exact combinatorial models of real hyperplane arrangement complements and their covers."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    Face,
    FacePoset,
    enumerate_faces,
    intersection_poset,
    load_arrangement,
    parse_arrangement,
)
from .covers import (
    CoverGraph,
    DeckError,
    DeckLabeling,
    build_cover,
    crossing_labeling,
    identity_cover,
    universal_cover_ball,
    validate_deck,
    winding_labeling,
)
from .diagrams import PosetDiagram, diagram_falk, diagram_id, diagram_rho, mu_star, order_complex, plim
from .invariants import (
    abelianization,
    betti_numbers,
    euler_characteristic,
    homology,
    pi1_presentation,
)
from .kernels import BACKEND
from .model import (
    SimplicialComplex,
    SimplicialMap,
    build_model,
    cell_boundary,
    cw_cells,
    iso_check,
    salvetti_direct,
    verify_covering,
)
from .oriented_system import OrientedSystem, Path, gamma_of
from .poset import FinitePoset

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "ArrangementError",
    "BACKEND",
    "CoverGraph",
    "DeckError",
    "DeckLabeling",
    "Face",
    "FacePoset",
    "FinitePoset",
    "OrientedSystem",
    "Path",
    "PosetDiagram",
    "SimplicialComplex",
    "SimplicialMap",
    "__version__",
    "abelianization",
    "betti_numbers",
    "build_cover",
    "build_model",
    "cell_boundary",
    "crossing_labeling",
    "cw_cells",
    "diagram_falk",
    "diagram_id",
    "diagram_rho",
    "enumerate_faces",
    "euler_characteristic",
    "gamma_of",
    "homology",
    "identity_cover",
    "intersection_poset",
    "iso_check",
    "load_arrangement",
    "mu_star",
    "order_complex",
    "parse_arrangement",
    "pi1_presentation",
    "plim",
    "salvetti_direct",
    "universal_cover_ball",
    "validate_deck",
    "verify_covering",
    "winding_labeling",
]
