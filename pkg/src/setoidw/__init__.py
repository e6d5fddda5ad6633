"""Initial algebras for polynomial functors on finite setoids.

Extensional well-founded trees, their equality and its witnesses, algebras
and fold, and executable checks of the laws that make fold the unique
algebra morphism out of the tree setoid.
"""

from .algebra import (Algebra, fold, is_algebra_morphism, poly_apply, poly_eq,
                      poly_map, recursive_step, uniqueness_check)
from .dwtypes import (DTree, DWSignature, dfold, per_witness, recdef_signature,
                      recdef_witness, validate_dtree, witness_sym, witness_trans,
                      wper_signature)
from .errors import SetoidError
from .setoid import (ExtFun, Setoid, SetoidFamily, codiscrete, discrete,
                     validate_extfun, validate_family, validate_setoid)
from .wtypes import (Tree, enumerate_extensional, is_extensional, per,
                     per_via_transport, sup, unsup)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "fold",
    "is_algebra_morphism",
    "poly_apply",
    "poly_eq",
    "poly_map",
    "recursive_step",
    "uniqueness_check",
    "DTree",
    "DWSignature",
    "dfold",
    "per_witness",
    "recdef_signature",
    "recdef_witness",
    "validate_dtree",
    "witness_sym",
    "witness_trans",
    "wper_signature",
    "SetoidError",
    "ExtFun",
    "Setoid",
    "SetoidFamily",
    "codiscrete",
    "discrete",
    "validate_extfun",
    "validate_family",
    "validate_setoid",
    "Tree",
    "enumerate_extensional",
    "is_extensional",
    "per",
    "per_via_transport",
    "sup",
    "unsup",
]
