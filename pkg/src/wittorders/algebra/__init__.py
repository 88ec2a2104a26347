"""Structure-constant orders, group tables and standard constructions."""
from .constructions import (Condensation, MatrixAlgebra, condense, group_algebra, matrix_ring,
                            tensor_opposite)
from .core import (AlgebraElement, StructureConstantAlgebra, make_algebra, multiply,
                   regular_reps, unit_inverse)
from .groups import GroupTable

__all__ = ["Condensation", "MatrixAlgebra", "condense", "group_algebra", "matrix_ring",
           "tensor_opposite", "AlgebraElement", "StructureConstantAlgebra", "make_algebra",
           "multiply", "regular_reps", "unit_inverse", "GroupTable"]
