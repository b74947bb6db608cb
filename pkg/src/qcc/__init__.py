"""Quantum Caldero–Chapoton characters for valued quivers over finite fields."""

from .ccmap import (CharacterEngine, ClusterCharacter, ObjectDescriptor, TheoremReport,
                    cc_module, cc_object, verify_thm1, verify_thm1_numeric, verify_thm2)
from .kernels import BACKEND
from .qring import QCoeff, eval_at, qbinom
from .rank2basis import Rank2, ZVector2, basis_check, porder_leq
from .seedkit import QuantumSeed, mutate_seed, rank2_vars
from .speckit import PRESET_LAMBDA, build, parse_quiver, preset, rank2_quiver
from .torus import SkewForm, TorusElement, monomial

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CharacterEngine", "ClusterCharacter", "ObjectDescriptor", "PRESET_LAMBDA",
    "QCoeff", "QuantumSeed", "Rank2", "SkewForm", "TheoremReport", "TorusElement", "ZVector2",
    "basis_check", "build", "cc_module", "cc_object", "eval_at", "monomial", "mutate_seed",
    "parse_quiver", "porder_leq", "preset", "qbinom", "rank2_quiver", "rank2_vars",
    "verify_thm1", "verify_thm1_numeric", "verify_thm2",
]
