import numpy as np
import pytest

from oracles import group_algebra_violation
from wittorders.algebra import GroupTable, group_algebra
from wittorders.coeffs import WittRing
from wittorders.errors import DepthViolation, NotAnAutomorphism, PrecisionExhausted, SchemaError
from wittorders.fixtures import z81_c3_lift
from wittorders.lifting import (LiftConfig, certified_precision, depth_of_group_algebra,
                                higman_lift, higman_lift_step, lift_agrees, maranda_probe,
                                out_stability_check)
from wittorders.morphisms import AlgebraMorphism, enumerate_automorphisms


def test_depth_of_group_algebras():
    assert depth_of_group_algebra(GroupTable.cyclic(4), 2) == 2
    assert depth_of_group_algebra(GroupTable.symmetric(3), 3) == 1
    assert depth_of_group_algebra(GroupTable.cyclic(3), 2) == 0


def test_long_lift_keeps_congruences():
    """(Z/3^7)C_3 from a map certified only mod 27: four correction steps."""
    G = GroupTable.cyclic(3)
    A = group_algebra(G, WittRing.over(3, 7))
    N = 3**7
    beta = AlgebraMorphism(A, np.array([[1, 0, 0], [0, 27, 1], [0, 1, 0]])[..., None])
    trace = higman_lift(beta, LiftConfig(1, 7))
    assert len(trace.steps) == 4
    assert trace.final.certified == "automorphism"
    assert group_algebra_violation(G, trace.final.matrix[..., 0].tolist(), N) is None
    mats = trace.morphisms()
    for i, (a, b) in enumerate(zip(mats, mats[1:]), start=1):
        assert not np.any((b - a) % 3 ** (1 + i))
        assert trace.steps[i - 1].certified_precision >= 2 + i + 1
    assert lift_agrees(trace, beta, 2)


def test_lift_to_lower_target():
    beta, s, _ = z81_c3_lift()
    trace = higman_lift(beta, LiftConfig(s, 3))
    assert trace.steps == [] and trace.final.certified == "automorphism"


def test_depth_violation_instance():
    """(Z/16)C_4 with s = 1 < v_2(4): an automorphism mod 8 that does not lift."""
    G = GroupTable.cyclic(4)
    A = group_algebra(G, WittRing.over(2, 4))
    u = A.basis(1) + 6 * (A.basis(0) + A.basis(1) + A.basis(2) + A.basis(3))
    images = [A.one, u, u * u, u * u * u]
    beta = AlgebraMorphism.from_images(A, images)
    assert certified_precision(beta) >= 3
    with pytest.raises(DepthViolation):
        higman_lift(beta, LiftConfig(1, 4))


def test_rejections():
    beta, s, _ = z81_c3_lift()
    A = beta.source
    bad = AlgebraMorphism(A, np.array([[1, 0, 0], [0, 1, 1], [0, 1, 0]])[..., None])
    with pytest.raises(NotAnAutomorphism):
        higman_lift(bad, LiftConfig(1, 4))
    with pytest.raises(PrecisionExhausted):
        higman_lift(beta, LiftConfig(1, 5))
    with pytest.raises(PrecisionExhausted):
        higman_lift_step(beta, 1, 2)                 # would need precision above 4
    wide = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 7))
    early = AlgebraMorphism(wide, beta.matrix)
    with pytest.raises(NotAnAutomorphism):
        higman_lift_step(early, 1, 2)                # only certified mod 27 < 3^4
    with pytest.raises(SchemaError):
        LiftConfig(1, 2)
    with pytest.raises(SchemaError):
        LiftConfig(-1, 4)


def test_trace_json_uses_witt_coordinates():
    beta, s, target = z81_c3_lift()
    doc = higman_lift(beta, LiftConfig(s, target)).to_json()
    assert doc["final_certified"] is True
    assert len(doc["steps"]) == 1
    entry = doc["initial"][1][1]                     # 27 = (0, 0, 0, 1) in Witt coordinates
    assert entry == [[0], [0], [0], [1]]


def test_maranda_flags():
    A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 4))
    ident = AlgebraMorphism.identity(A)
    sq = AlgebraMorphism.from_images(A, [A.basis(0), A.basis(2), A.basis(1)])
    r = maranda_probe(ident, sq, 3)
    assert r.consistent and r.at_full == "no" and r.flag is None
    assert maranda_probe(ident, ident, 1).at_probe == "yes"
    with pytest.raises(SchemaError):
        maranda_probe(ident, sq, 5)


def test_out_stability():
    G = GroupTable.cyclic(2)
    high = group_algebra(G, WittRing.over(2, 6))
    low = group_algebra(G, WittRing.over(2, 3))
    autos = enumerate_automorphisms(low)
    report = out_stability_check(high, autos, 1)
    assert len(report) == 8
    assert all(e.lifted and e.matches for e in report)
    with pytest.raises(SchemaError):
        out_stability_check(high, autos, 2)          # needs automorphisms mod 2^5
