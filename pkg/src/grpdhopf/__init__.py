"""Finite groupoids, their commutative Hopf algebroids of representative
functions, and exact verification of the duality between them."""

from .linalg import FieldSpec, Fp, Matrix
from .groupoid import (FiniteGroupoid, GroupoidMorphism, action_groupoid, band_groupoid, cyclic_group,
                       disjoint_union, enumerate_morphisms, induced_groupoid, pair_groupoid, symmetric_group,
                       unit_groupoid, validate_groupoid)
from .representation import Representation, spanning_family, validate_rep
from .hopf import (HopfAlgebroid, HopfMorphism, Comodule, character_groupoid, characters, check_hopf_axioms)
from .repfun import build_repfun, coend_from_family, repfun_concrete, zeta, gt_check
from .duality import duality_bijection_check, omega, theta, triangle_one, triangle_two

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "Fp", "Matrix",
    "FiniteGroupoid", "GroupoidMorphism", "action_groupoid", "band_groupoid", "cyclic_group",
    "disjoint_union", "enumerate_morphisms", "induced_groupoid", "pair_groupoid", "symmetric_group",
    "unit_groupoid", "validate_groupoid",
    "Representation", "spanning_family", "validate_rep",
    "HopfAlgebroid", "HopfMorphism", "Comodule", "character_groupoid", "characters", "check_hopf_axioms",
    "build_repfun", "coend_from_family", "repfun_concrete", "zeta", "gt_check",
    "duality_bijection_check", "omega", "theta", "triangle_one", "triangle_two",
]
