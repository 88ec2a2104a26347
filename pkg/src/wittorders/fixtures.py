"""Bundled fixture documents: small groups, worked parameter sets and jobs."""
import numpy as np

from .algebra.constructions import group_algebra, matrix_ring
from .algebra.groups import GroupTable
from .coeffs.witt import WittRing
from .crossed.params import ParameterSet, group_algebra_parameter_set
from .errors import SchemaError
from .morphisms import AlgebraMorphism, inner_from_unit
from .serialize import (VERSION, algebra_to_json, element_to_json, group_to_json,
                        morphism_to_json, parameter_set_to_json)


def _groups():
    return {"C2": GroupTable.cyclic(2), "C3": GroupTable.cyclic(3), "C4": GroupTable.cyclic(4),
            "C2xC2": GroupTable.direct_product(GroupTable.cyclic(2), GroupTable.cyclic(2)),
            "S3": GroupTable.symmetric(3)}


def _w2f3():
    return WittRing.over(3, 2)


def trivial_ring():
    return group_algebra(GroupTable.trivial(), _w2f3(), name="W_2(F_3)")


def s3_a3():
    G = GroupTable.symmetric(3)
    A3 = [g for g in range(G.order) if G.element_order(g) in (1, 3)]
    return group_algebra_parameter_set(G, A3, _w2f3())


def c4_c2():
    G = GroupTable.cyclic(4)
    return group_algebra_parameter_set(G, [0, 2], WittRing.over(2, 2))


def z81_c3_lift():
    """(Z/81)C_3 with beta certified only modulo 27."""
    A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 4))
    beta = AlgebraMorphism(A, np.array([[1, 0, 0], [0, 27, 1], [0, 1, 0]])[..., None])
    return beta, 1, 4


def z16_c2_lift():
    """(Z/16)C_2 with beta(g) = 3g, an automorphism modulo 8 only."""
    A = group_algebra(GroupTable.cyclic(2), WittRing.over(2, 4))
    beta = AlgebraMorphism(A, np.array([[1, 0], [0, 3]])[..., None])
    return beta, 1, 4


def m2_crossed():
    """C_2 acting on M_2(W_2(F_3)) by conjugation with the swap, gamma(g,g) = 2.

    Returns (ParameterSet, idempotent E_00, matrix units E_ab).
    """
    R = matrix_ring(trivial_ring(), 2)
    swap = R.unit(0, 1) + R.unit(1, 0)
    G = GroupTable.cyclic(2)
    alpha = [AlgebraMorphism.identity(R), inner_from_unit(swap)]
    gamma = [[R.one, R.one], [R.one, R.scalar(2)]]
    units = [[R.unit(a, b) for b in range(2)] for a in range(2)]
    return ParameterSet(G, R, alpha, gamma), R.unit(0, 0), units


def _job(kind, **fields):
    doc = {"format": kind, "version": VERSION}
    doc.update(fields)
    return doc


def _lift_job(maker):
    beta, s, target = maker()
    return _job("lift-job", morphism=morphism_to_json(beta), s=s, target_precision=target)


def _condense_job():
    P, e, units = m2_crossed()
    return _job("condense-job", parameter_set=parameter_set_to_json(P),
                idempotent=element_to_json(e),
                matrix_units=[[element_to_json(x) for x in row] for row in units])


def _enumerate_job():
    return _job("enumerate-job", R=algebra_to_json(trivial_ring()),
                group=group_to_json(GroupTable.cyclic(2)))


def _c3_square():
    A = group_algebra(GroupTable.cyclic(3), _w2f3())
    return morphism_to_json(AlgebraMorphism.from_images(A, [A.basis(0), A.basis(2), A.basis(1)]))


def registry():
    """Name -> zero-argument function building the document."""
    out = {name: (lambda G=G: group_to_json(G)) for name, G in _groups().items()}
    out.update({
        "trivial-ring": lambda: algebra_to_json(trivial_ring()),
        "w2f3-c3-algebra": lambda: algebra_to_json(group_algebra(GroupTable.cyclic(3), _w2f3())),
        "w2f3-c3-square": _c3_square,
        "s3-a3-crossed": lambda: parameter_set_to_json(s3_a3()[0]),
        "c4-c2-crossed": lambda: parameter_set_to_json(c4_c2()[0]),
        "m2-crossed": lambda: parameter_set_to_json(m2_crossed()[0]),
        "m2-crossed-condense": _condense_job,
        "z81-c3-lift": lambda: _lift_job(z81_c3_lift),
        "z16-c2-lift": lambda: _lift_job(z16_c2_lift),
        "w2f3-c2-enumerate": _enumerate_job,
    })
    return out


def names():
    return sorted(registry())


def emit_fixture(name):
    table = registry()
    if name not in table:
        raise SchemaError(f"unknown fixture {name!r}; known: {', '.join(sorted(table))}")
    return table[name]()
