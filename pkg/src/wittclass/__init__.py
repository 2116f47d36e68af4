"""Exact Witt classes of flat SL(2,Q)-bundles over surfaces."""

from .qforms import (
    REAL,
    DiagonalForm,
    FormError,
    Place,
    hasse_invariant,
    hilbert_symbol,
    local_anisotropic_dim,
    signature,
    signed_discriminant,
    square_class,
)
from .realize import decompose_target, genus1_block, markov_solution, realize, realize_full
from .sl2 import Mat2, coboundary_n, decompose, moore_witt_cocycle, nekovar_cochain, witt_cocycle
from .surface import (
    BoundedSurfaceRep,
    ClosedSurfaceRep,
    evaluate_closed,
    evaluate_closed_delta,
    glue_closed,
    relative_class,
    twist_bounded,
    twist_closed,
    vee,
)
from .witt import LaurentForm, WittClass, laurent_anisotropic_dim, pfister2, symbol

__version__ = "0.1.0"
