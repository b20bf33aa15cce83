"""Exhaustive computation with finite commutative rings and their modules.

The predicates of interest are the S-versions of prime, primary and
1-absorbing primary submodules; see :mod:`absorb_lab.predicates`.
"""

from .kernels import BACKEND
from .module import FiniteModule, Submodule
from .predicates import Predicate, check_ideal_predicate, check_submodule_predicate
from .ring import FiniteRing, Ideal, InputError, MultiplicativeSet, build_zn
from .schema import InstanceSpec, compile_instance, parse_document, parse_instance, serialize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FiniteModule",
    "FiniteRing",
    "Ideal",
    "InputError",
    "InstanceSpec",
    "MultiplicativeSet",
    "Predicate",
    "Submodule",
    "build_zn",
    "check_ideal_predicate",
    "check_submodule_predicate",
    "compile_instance",
    "parse_document",
    "parse_instance",
    "serialize",
]
