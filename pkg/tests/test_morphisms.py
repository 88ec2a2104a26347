import numpy as np
import pytest

from oracles import det_mod, group_algebra_violation
from wittorders.algebra import GroupTable, group_algebra, matrix_ring
from wittorders.coeffs import WittRing
from wittorders.errors import CostGuardExceeded, RingMismatch, SchemaError
from wittorders.guards import Guards
from wittorders.morphisms import (AUTOMORPHISM, AlgebraMorphism, OLinearityData, certify,
                                  check_automorphism, check_homomorphism, check_o_linear, compose,
                                  enumerate_automorphisms, find_unit, galois_ring_as_algebra,
                                  inner_from_unit, intertwiner_generators, is_inner_equivalent,
                                  truncate_morphism)

W2F3 = WittRing.over(3, 2)


def test_automorphisms_of_z8_c2_match_brute_force():
    G = GroupTable.cyclic(2)
    A = group_algebra(G, WittRing.over(2, 3))
    found = enumerate_automorphisms(A)
    brute = []
    for a in range(8):
        for b in range(8):
            for c in range(8):
                for d in range(8):
                    M = [[a, b], [c, d]]
                    if det_mod(M, 2) and group_algebra_violation(G, M, 8) is None:
                        brute.append(M)
    assert len(found) == len(brute) == 8
    assert sorted(M.matrix[..., 0].tolist() for M in found) == sorted(brute)


def test_composition_convention():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    sq = AlgebraMorphism.from_images(A, [A.basis(0), A.basis(2), A.basis(1)])
    x = A.basis(1) + 2 * A.basis(2)
    assert compose(sq, sq).is_identity()
    assert compose(sq, sq)(x) == x
    u = A.one + 3 * A.basis(1)
    t = inner_from_unit(u)
    assert compose(sq, t)(x) == sq(t(x))
    assert sq.inverse()(sq(x)) == x
    other = group_algebra(GroupTable.cyclic(2), W2F3)
    with pytest.raises(RingMismatch):
        compose(sq, AlgebraMorphism.identity(other))


def test_certificates_and_witnesses():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    zero = AlgebraMorphism(A, np.zeros((3, 3, 1), dtype=np.int64))
    cert = check_automorphism(zero)
    assert not cert and cert.witness == ("singular",)
    m = np.array(A.gr.identity(3))
    m[0, 0, 0] = 4
    cert = check_automorphism(AlgebraMorphism(A, m))
    assert not cert and cert.witness[0] == "identity"
    assert certify(AlgebraMorphism(A, m)).certified == "rejected"
    assert certify(AlgebraMorphism.identity(A)).certified == AUTOMORPHISM
    assert cert.to_json()["ok"] is False


def test_non_unital_homomorphism():
    base = group_algebra(GroupTable.trivial(), W2F3)
    M = matrix_ring(base, 2)
    corner = AlgebraMorphism(base, M.unit(0, 0).coords[None], M)
    assert check_homomorphism(corner, unital=False)
    assert not check_homomorphism(corner, unital=True)


def test_inner_automorphisms_of_matrix_ring():
    base = group_algebra(GroupTable.trivial(), W2F3)
    M = matrix_ring(base, 2)
    swap = M.unit(0, 1) + M.unit(1, 0)
    t = inner_from_unit(swap)
    assert check_automorphism(t)
    assert t(M.unit(0, 0)) == M.unit(1, 1)
    res = is_inner_equivalent(t, AlgebraMorphism.identity(M))
    assert res.status == "yes"
    assert inner_from_unit(res.witness) == t


def test_outer_pair_is_not_inner():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    sq = AlgebraMorphism.from_images(A, [A.basis(0), A.basis(2), A.basis(1)])
    res = is_inner_equivalent(AlgebraMorphism.identity(A), sq)
    assert res.status == "no" and res.search.exhaustive


def test_frobenius_is_not_linear():
    ring = WittRing.over(2, 2, [1, 1, 1])
    A = galois_ring_as_algebra(ring)
    autos = enumerate_automorphisms(A)
    assert len(autos) == 2                       # identity and Frobenius
    frob = next(a for a in autos if not a.is_identity())
    data = OLinearityData.from_central_elements([A.basis(1)])
    cert = check_o_linear(frob, data)
    assert not cert and len(cert.witness) == 3
    assert check_o_linear(autos[0] if autos[0].is_identity() else autos[1], data)
    assert check_o_linear(frob, OLinearityData.scalar(A))


def test_find_unit_and_intertwiners():
    base = group_algebra(GroupTable.trivial(), W2F3)
    M = matrix_ring(base, 2)
    e0, e1 = M.unit(0, 0), M.unit(1, 1)
    gens = intertwiner_generators(M, [e1], [e0])
    search = find_unit(M, gens)
    assert search.status == "found"
    z = search.unit
    assert z * e0 == e1 * z
    nothing = find_unit(M, intertwiner_generators(M, [M.zero], [e0]))
    assert nothing.status == "none"


def test_unit_search_guard_and_sampling():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    gens = [A.gr.identity(3)[i] for i in range(3)]
    tiny = Guards(max_candidates=2, unit_samples=50)
    res = find_unit(A, gens, tiny, seed=3)
    assert res.status == "found" and not res.exhaustive
    hopeless = [(A.basis(1) - A.one).coords]
    assert find_unit(A, hopeless, tiny, seed=3).status == "inconclusive"


def test_truncation():
    A = group_algebra(GroupTable.cyclic(2), WittRing.over(2, 4))
    beta = AlgebraMorphism(A, np.array([[1, 0], [0, 3]])[..., None])
    assert not check_automorphism(beta)
    t = truncate_morphism(beta, 3)
    assert check_automorphism(t)
    with pytest.raises(SchemaError):
        truncate_morphism(t, 4)


def test_enumeration_guard():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    with pytest.raises(CostGuardExceeded):
        enumerate_automorphisms(A, Guards(max_candidates=100))
