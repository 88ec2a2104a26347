"""Acceptance criteria, one test (or a few) per criterion, with runtime bounds."""
import time
from itertools import permutations

import numpy as np
import pytest

from oracles import group_algebra_violation, group_convolve, square_classes, witt_to_int
from wittorders.algebra.constructions import group_algebra
from wittorders.algebra.groups import GroupTable
from wittorders.cli import run
from wittorders.coeffs.witt import WittRing, padic_oracle, witt_inv
from wittorders.cohomology.cochains import (Bimodule, cocycle_basis, d1, h1_invariants,
                                            solve_coboundary)
from wittorders.crossed.enumerate import enumerate_crossed_products
from wittorders.crossed.params import group_algebra_parameter_set, validate_parameter_set
from wittorders.crossed.product import build_crossed_product, condense_crossed, decondense
from wittorders.fixtures import m2_crossed, trivial_ring, z16_c2_lift, z81_c3_lift
from wittorders.lifting import (LiftConfig, certified_precision, depth_of_group_algebra,
                                higman_lift, maranda_probe)
from wittorders.morphisms import AlgebraMorphism, check_automorphism, compose, inner_from_unit


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# -- 1 ------------------------------------------------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_witt_oracle_is_ring_isomorphism(p, n):
    with Timer() as t:
        ring = WittRing.over(p, n)
        N = p**n
        elems = list(ring.elements())
        images = [padic_oracle(u) for u in elems]
        assert sorted(images) == list(range(N))
        assert images == [witt_to_int(u.codes, p, n) for u in elems]
        assert padic_oracle(ring.one) == 1
        for u, a in zip(elems, images):
            for v, b in zip(elems, images):
                assert padic_oracle(u + v) == (a + b) % N
                assert padic_oracle(u * v) == (a * b) % N
    assert t.elapsed < 1.0


# -- 2 ------------------------------------------------------------------------------


@pytest.mark.criterion(2)
@pytest.mark.parametrize("p", [2, 3])
def test_p_fold_sum_of_one(p):
    with Timer() as t:
        ring = WittRing.over(p, 3)
        total = ring.zero
        for _ in range(p):
            total = total + ring.one
        assert total == ring([0, 1, 0])
        assert total.codes == (0, 1, 0)
    assert t.elapsed < 1.0


# -- 3 ------------------------------------------------------------------------------


@pytest.mark.criterion(3)
@pytest.mark.parametrize("p,n", [(3, 2), (2, 3)])
def test_closed_form_inverse_matches_brute_force(p, n):
    with Timer() as t:
        ring = WittRing.over(p, n)
        elems = list(ring.elements())
        units = [u for u in elems if u.is_unit()]
        assert len(units) == (p - 1) * p ** (n - 1)
        for u in units:
            brute = [v for v in elems if u * v == ring.one]
            assert brute == [witt_inv(u)]
    assert t.elapsed < 1.0


# -- 4 ------------------------------------------------------------------------------


def _group_automorphisms(G):
    """Automorphisms of a group as permutations, by brute force."""
    out = []
    for perm in permutations(range(G.order)):
        if all(perm[G.mult[g][h]] == G.mult[perm[g]][perm[h]]
               for g in range(G.order) for h in range(G.order)):
            out.append(perm)
    return out


@pytest.mark.criterion(4)
def test_automorphism_certification_and_rejection():
    with Timer() as t:
        G = GroupTable.cyclic(3)
        A = group_algebra(G, WittRing.over(3, 2))
        N = A.gr.N
        maps = [AlgebraMorphism.identity(A).with_status("unchecked")]
        for perm in _group_automorphisms(G):
            maps.append(AlgebraMorphism.from_images(A, [A.basis(perm[g]) for g in range(3)]))
        assert len(maps) == 3
        for M in maps:
            assert check_automorphism(M)

        rng = np.random.default_rng(20261016)
        rejected = 0
        while rejected < 100:
            base = maps[rng.integers(len(maps))]
            delta = np.zeros_like(base.matrix)
            k = int(rng.integers(1, 4))
            for _ in range(k):
                i, j = rng.integers(3, size=2)
                delta[i, j, 0] = rng.integers(1, N)
            P = AlgebraMorphism(A, (base.matrix + delta) % N)
            ints = P.matrix[..., 0].tolist()
            if group_algebra_violation(G, ints, N) is None:
                continue                        # still multiplicative: not a counterexample
            cert = check_automorphism(P)
            assert not cert
            w = cert.witness
            assert w is not None
            if w[0] == "identity":
                assert ints[G.identity] != [1, 0, 0]
            elif w[0] != "singular":
                i, j, v = w
                prod = [0, 0, 0]
                prod[G.mult[i][j]] = 1
                lhs = [sum(prod[a] * ints[a][b] for a in range(3)) % N for b in range(3)]
                rhs = group_convolve(G, ints[i], ints[j], N)
                assert lhs[v] != rhs[v]
            rejected += 1
    assert t.elapsed < 5.0


# -- 5 ------------------------------------------------------------------------------


def _check_lift(maker, p):
    beta, s, target = maker()
    assert certified_precision(beta) == 2 * s + 1
    assert not check_automorphism(beta)
    trace = higman_lift(beta, LiftConfig(s, target))
    assert trace.final.certified == "automorphism"
    assert certified_precision(trace.final) == target
    G = beta.source.group
    assert group_algebra_violation(G, trace.final.matrix[..., 0].tolist(), p**target) is None
    assert not np.any((trace.final.matrix - beta.matrix) % p ** (s + 1))
    mats = trace.morphisms()
    for i, (a, b) in enumerate(zip(mats, mats[1:]), start=1):
        assert not np.any((b - a) % p ** (s + i))
        assert trace.steps[i - 1].congruence
    return trace


@pytest.mark.criterion(5)
def test_lift_z81_c3():
    with Timer() as t:
        trace = _check_lift(z81_c3_lift, 3)
        assert len(trace.steps) == 1
    assert t.elapsed < 10.0


@pytest.mark.criterion(5)
def test_lift_z16_c2():
    with Timer() as t:
        trace = _check_lift(z16_c2_lift, 2)
        assert len(trace.steps) == 1
    assert t.elapsed < 10.0


# -- 6 ------------------------------------------------------------------------------


@pytest.mark.criterion(6)
def test_depth_consistency():
    groups = [GroupTable.cyclic(2), GroupTable.cyclic(3), GroupTable.cyclic(4),
              GroupTable.symmetric(3)]
    with Timer() as t:
        for G in groups:
            for p in (2, 3):
                if G.order % p:
                    continue
                s = depth_of_group_algebra(G, p)
                for n in (1, 2, 3):
                    A = group_algebra(G, WittRing.over(p, n))
                    basis = cocycle_basis(Bimodule.regular(A))
                    assert basis
                    for g in basis:
                        h = solve_coboundary(g, s)
                        assert np.array_equal(d1(h).values, (p**s * g.values) % A.gr.N)
                    report = h1_invariants(A)
                    assert all(e <= min(s, n) for e in report.exponents)
    assert t.elapsed < 60.0


# -- 7 ------------------------------------------------------------------------------


def _probe_family(A):
    G = A.group
    rng = np.random.default_rng(7)
    maps = [AlgebraMorphism.identity(A),
            AlgebraMorphism.from_images(A, [A.basis(G.mult[g][g]) for g in range(G.order)])]
    twists = []
    while len(twists) < 2:
        u = A.random_element(rng)
        if u.is_unit():
            twists.append(u)
    family = list(maps)
    for M in maps:
        for u in twists:
            family.append(compose(inner_from_unit(u), M))
    return family


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n", [3, 4])
def test_inner_equivalence_probe(n):
    with Timer() as t:
        A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, n))
        s = 2 * 1 + 1
        family = _probe_family(A)
        for a in family:
            assert check_automorphism(a)
        for a in family:
            for b in family:
                report = maranda_probe(a, b, s, seed=0)
                assert report.consistent
                assert report.flag is None
    assert t.elapsed < 10.0


# -- 8 ------------------------------------------------------------------------------


def _assert_reconstruction(G, N, ring):
    P, data = group_algebra_parameter_set(G, N, ring)
    assert validate_parameter_set(P)
    gamma = build_crossed_product(P).algebra
    # position x*|N| + j of the crossed product corresponds to the group element n_j [x]
    k = len(data.N)
    elem = [G.mul(n, rx) for rx in data.reps for n in data.N]
    assert sorted(elem) == list(range(G.order))
    c = gamma.constants
    ref = group_algebra(G, ring).constants
    for a in range(G.order):
        for b in range(G.order):
            for v in range(G.order):
                assert np.array_equal(c[a, b, v], ref[elem[a], elem[b], elem[v]])
    one = np.zeros(G.order, dtype=np.int64)
    one[elem.index(G.identity)] = 1
    assert np.array_equal(gamma.one.coords[:, 0], one) and not np.any(gamma.one.coords[:, 1:])
    return P, k


@pytest.mark.criterion(8)
@pytest.mark.parametrize("p,modulus", [(2, None), (3, None), (2, [1, 1, 1])])
def test_crossed_product_reconstruction(p, modulus):
    with Timer() as t:
        ring = WittRing.over(p, 2, modulus)
        S3 = GroupTable.symmetric(3)
        A3 = [g for g in range(6) if S3.element_order(g) in (1, 3)]
        _assert_reconstruction(S3, A3, ring)
        P, _ = _assert_reconstruction(GroupTable.cyclic(4), [0, 2], ring)
        gam = P.gamma
        assert any(gam[x][y] != P.R.one for x in range(2) for y in range(2))
    assert t.elapsed < 5.0


# -- 9 ------------------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_classification_w2f3_c2():
    with Timer() as t:
        R = trivial_ring()
        report = enumerate_crossed_products(R, GroupTable.cyclic(2))
        assert report.count == 2
        assert report.coverage and report.aut_complete
        assert report.pairwise and all(not c["equivalent"] for c in report.pairwise)
        # independent count: trivial action, U(Z/9) modulo squares
        units = [u for u in range(9) if u % 3]
        assert report.count == square_classes(units, lambda a, b: a * b % 9)
        members = sorted(k for c in report.classes for k in c.members)
        assert len(members) == report.valid
    assert t.elapsed < 60.0


# -- 10 -----------------------------------------------------------------------------


@pytest.mark.criterion(10)
def test_condensation_m2():
    with Timer() as t:
        P, e, units = m2_crossed()
        assert validate_parameter_set(P)
        pres = build_crossed_product(P)
        cc = condense_crossed(pres, e)
        corner = cc.presentation
        assert corner.R.rank == 1 and corner.algebra.rank == 2
        assert validate_parameter_set(corner.params)
        # the corner crossed product is W_2(F_3)[u]/(u^2 - 2)
        u = corner.unit(1)
        assert u * u == corner.algebra.scalar(2) * corner.unit(0)
        mats = [[pres.embed(x) for x in row] for row in units]
        M, psi, cert = decondense(cc, mats)
        assert cert, cert.reason
        assert M.rank == pres.algebra.rank
    assert t.elapsed < 10.0


# -- 11 -----------------------------------------------------------------------------


JOBS = [
    (["lift"], "z81-c3-lift"),
    (["lift"], "z16-c2-lift"),
    (["enumerate"], "w2f3-c2-enumerate"),
    (["crossed", "condense"], "m2-crossed-condense"),
    (["crossed", "build"], "s3-a3-crossed"),
    (["crossed", "normalize"], "c4-c2-crossed"),
    (["morphism", "check"], "w2f3-c3-square"),
    (["algebra", "validate", "--h1"], "w2f3-c3-algebra"),
]


@pytest.mark.criterion(11)
def test_cli_reports_are_byte_identical(tmp_path):
    for cmd, fixture in JOBS:
        src = tmp_path / f"{fixture}.json"
        code, _ = run(["fixture", fixture, "--output", str(src)])
        assert code == 0
        texts = []
        for k in range(2):
            out = tmp_path / f"{fixture}-{k}.out"
            code, _ = run(cmd + [str(src), "--seed", "11", "--output", str(out)])
            assert code == 0, (cmd, fixture, out.read_text())
            texts.append(out.read_bytes())
        assert texts[0] == texts[1]


@pytest.mark.criterion(11)
def test_library_reports_are_deterministic():
    from wittorders.serialize import dumps

    R = trivial_ring()
    G = GroupTable.cyclic(2)
    reports = {dumps(enumerate_crossed_products(R, G, order_seed=seed).to_json())
               for seed in (None, 0, 5)}
    assert len(reports) == 1
    A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 4))
    fam = _probe_family(A)
    a = dumps(maranda_probe(fam[0], fam[3], 3, seed=4).to_json())
    b = dumps(maranda_probe(fam[0], fam[3], 3, seed=4).to_json())
    assert a == b
    beta, s, target = z81_c3_lift()
    assert dumps(higman_lift(beta, LiftConfig(s, target)).to_json()) == \
        dumps(higman_lift(beta, LiftConfig(s, target)).to_json())
