"""Exact computations with hearts, tilts, and stability conditions
for representations of acyclic quivers."""

from .quiver import Quiver, parse_quiver, euler_form, classify_type
from .rep import Context, make_rep, simple_rep, indecomposable_closure
from .derived import (
    DerivedObject,
    derived_object,
    graded_hom,
    shift,
    is_exceptional,
    collection_flags,
    ext_normalize,
    mutate,
    braid_act,
)
from .tilt import (
    SymbolicCollection,
    std_collection,
    tilt,
    cross_check,
    heart_key,
    parse_tilt_word,
    apply_tilt_word,
)
from .heartex import explore, intermediate_hearts, export_graph
from .stab import (
    make_stability,
    validate_charge,
    phase_of,
    sigma_exceptional_check,
    c_action,
    advance_heart,
)

__version__ = "0.1.0"

__all__ = [
    "Quiver", "parse_quiver", "euler_form", "classify_type",
    "Context", "make_rep", "simple_rep", "indecomposable_closure",
    "DerivedObject", "derived_object", "graded_hom", "shift",
    "is_exceptional", "collection_flags", "ext_normalize", "mutate",
    "braid_act",
    "SymbolicCollection", "std_collection", "tilt", "cross_check",
    "heart_key", "parse_tilt_word", "apply_tilt_word",
    "explore", "intermediate_hearts", "export_graph",
    "make_stability", "validate_charge", "phase_of",
    "sigma_exceptional_check", "c_action", "advance_heart",
]
