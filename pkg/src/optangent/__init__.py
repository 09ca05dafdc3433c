"""Exact tangent structures on categories of operadic algebras."""
from .exactnum import GF, QQ, Matrix, RingSpec, kernel_basis, rref
from .operad import builtin_morphism, builtin_operad
from .opalg import (AlgebraMorphism, PresentedAlgebra, StructureConstantAlgebra,
                    check_morphism, semidirect_tangent)
from .report import AxiomReport

__version__ = "0.1.0"
