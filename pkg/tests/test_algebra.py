import numpy as np
import pytest

from oracles import group_convolve
from wittorders.algebra import (GroupTable, condense, group_algebra, make_algebra, matrix_ring,
                                tensor_opposite, unit_inverse)
from wittorders.coeffs import WittRing
from wittorders.errors import (AssociativityViolation, IdentityViolation, InvalidGroupTable,
                               NotAUnit, NotIdempotent, NotNormal)

W2F3 = WittRing.over(3, 2)


def test_groups():
    S3 = GroupTable.symmetric(3)
    assert S3.order == 6
    assert sum(1 for g in range(6) if S3.element_order(g) == 2) == 3
    A3 = [g for g in range(6) if S3.element_order(g) in (1, 3)]
    assert S3.is_normal(A3)
    assert not S3.is_normal([S3.identity, next(g for g in range(6) if S3.element_order(g) == 2)])
    V = GroupTable.direct_product(GroupTable.cyclic(2), GroupTable.cyclic(2))
    assert all(V.element_order(g) <= 2 for g in range(4))
    assert GroupTable.from_json(S3.to_json()) == S3
    with pytest.raises(InvalidGroupTable):
        GroupTable([[0, 1], [0, 1]])


@pytest.mark.parametrize("G", [GroupTable.cyclic(4), GroupTable.symmetric(3)])
def test_group_algebra_matches_convolution(G):
    A = group_algebra(G, WittRing.over(2, 3))
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = A.random_element(rng), A.random_element(rng)
        ref = group_convolve(G, x.coords[:, 0].tolist(), y.coords[:, 0].tolist(), 8)
        assert (x * y).coords[:, 0].tolist() == ref
    A.validate()
    assert A.is_commutative() == (G.order == 4)


def test_units_and_inverses():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    g = A.basis(1)
    assert g * g.inverse() == A.one
    with pytest.raises(NotAUnit):
        unit_inverse(g - A.one)                      # augmentation-ideal element over Z/9
    assert (A.one + 3 * g).is_unit()


def test_validation_witnesses():
    A = group_algebra(GroupTable.cyclic(3), W2F3)
    c = np.array(A.constants)
    c[1, 1, 2, 0] = 2                                 # g * g = 2 g^2
    with pytest.raises(AssociativityViolation) as exc:
        make_algebra(c, A.one.coords, W2F3)
    assert exc.value.witness is not None
    ident = np.zeros_like(A.one.coords)
    ident[1, 0] = 1
    with pytest.raises(IdentityViolation):
        make_algebra(A.constants, ident, W2F3)


def test_extension_scalars():
    ring = WittRing.over(2, 2, [1, 1, 1])
    A = group_algebra(GroupTable.cyclic(2), ring)
    x = A.random_element(np.random.default_rng(5))
    assert x * A.one == x
    A.validate()


def test_matrix_ring_and_corner():
    base = group_algebra(GroupTable.trivial(), W2F3)
    M = matrix_ring(base, 2)
    M.validate()
    assert not M.is_commutative()
    e = M.unit(0, 0)
    cond = condense(M, e)
    assert cond.algebra.rank == 1
    y = cond.algebra.one
    assert cond.include(y) == e
    assert cond.restrict(e) == y
    with pytest.raises(NotIdempotent):
        condense(M, M.scalar(2))


def test_group_algebra_corner():
    A = group_algebra(GroupTable.cyclic(2), W2F3)
    # (1 + g)/2 is idempotent since 2 is invertible in Z/9
    half = pow(2, -1, 9)
    e = (A.one + A.basis(1)) * half
    cond = condense(A, e)
    assert cond.algebra.rank == 1


def test_tensor_opposite():
    A = group_algebra(GroupTable.symmetric(3), W2F3)
    E = tensor_opposite(group_algebra(GroupTable.cyclic(2), W2F3))
    assert E.rank == 4 and E.is_commutative()
    Ae = tensor_opposite(A)
    assert Ae.rank == 36
    Ae.validate()


def test_truncate_and_change_basis():
    A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 3))
    T = A.truncate(2)
    assert T.ring.n == 2 and A.truncate(3) is A
    rng = np.random.default_rng(1)
    x, y = A.random_element(rng), A.random_element(rng)
    xt, yt = T.element(x.coords % 9), T.element(y.coords % 9)
    assert (xt * yt).coords.tolist() == ((x * y).coords % 9).tolist()
    P = np.array([[1, 0, 0], [1, 1, 0], [2, 0, 1]])[..., None]
    B = A.change_basis(P)
    B.validate()


def test_not_normal():
    from wittorders.crossed.params import CosetData

    S3 = GroupTable.symmetric(3)
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    with pytest.raises(NotNormal):
        CosetData(S3, [S3.identity, t])
