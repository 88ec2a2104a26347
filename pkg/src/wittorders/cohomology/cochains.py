"""Hochschild 1- and 2-cochains of an order with values in a bimodule.

Cochains are stored on basis tuples.  A bimodule T with basis t_0..t_{m-1}
is given by two tensors

    L[i, a, b]: coordinate b of lambda_i . t_a
    Rt[a, j, b]: coordinate b of t_a . lambda_j

and a 1-cochain h by H[i, b] (h(lambda_i) = sum_b H[i, b] t_b), a 2-cochain
by F[i, j, b].  All arrays carry a trailing Galois-ring scalar axis.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import NoSolution, NotCoboundary, RingMismatch, SchemaError
from ..guards import DEFAULT
from .howell import kernel_mod, smith_exponents


class Bimodule:
    def __init__(self, algebra, left, right, name=None):
        self.algebra = algebra
        gr = algebra.gr
        left = np.asarray(left, dtype=np.int64) % gr.N
        right = np.asarray(right, dtype=np.int64) % gr.N
        r = algebra.rank
        m = left.shape[1]
        if left.shape != (r, m, m, gr.d) or right.shape != (m, r, m, gr.d):
            raise SchemaError("bimodule action tensors have inconsistent shapes")
        self.left = left
        self.right = right
        self.dim = m
        self.name = name

    @classmethod
    def regular(cls, A):
        cached = getattr(A, "_regular_bimodule", None)
        if cached is None:
            cached = cls(A, A.constants, A.constants, name="regular")
            A._regular_bimodule = cached
        return cached

    @classmethod
    def twisted(cls, A, left_twist=None, right_twist=None):
        """A with x . t = a(x) t and t . y = t b(y) for morphisms a, b of A."""
        gr = A.gr
        left, right = A.constants, A.constants
        if left_twist is not None:
            left = gr.einsum("is,sab->iab", left_twist.matrix, A.constants)
        if right_twist is not None:
            right = gr.einsum("js,asb->ajb", right_twist.matrix, A.constants)
        return cls(A, left, right, name="twisted")

    def truncate(self, m):
        A = self.algebra.truncate(m)
        N = A.gr.N
        return Bimodule(A, self.left % N, self.right % N, self.name)

    @cached_property
    def system(self):
        return CochainSystem(self)


@dataclass
class Cochain1:
    module: Bimodule
    values: np.ndarray          # (r, m, d)

    def __post_init__(self):
        A, gr = self.module.algebra, self.module.algebra.gr
        self.values = gr.asarray(self.values, (A.rank, self.module.dim))

    @classmethod
    def zero(cls, module):
        return cls(module, module.algebra.gr.zeros(module.algebra.rank, module.dim))

    @classmethod
    def inner(cls, a):
        """h(x) = a x - x a in the regular bimodule."""
        A = a.parent
        T = Bimodule.regular(A)
        gr = A.gr
        vals = (A.left_matrix(a.coords) - A.right_matrix(a.coords)).transpose(1, 0, 2) % gr.N
        return cls(T, vals)

    def __call__(self, x):
        """Coordinates in T of h(x)."""
        return self.module.algebra.gr.vecmat(x.coords, self.values)


@dataclass
class Cochain2:
    module: Bimodule
    values: np.ndarray          # (r, r, m, d)

    def __post_init__(self):
        A = self.module.algebra
        self.values = A.gr.asarray(self.values, (A.rank, A.rank, self.module.dim))

    @classmethod
    def zero(cls, module):
        r = module.algebra.rank
        return cls(module, module.algebra.gr.zeros(r, r, module.dim))

    def is_zero(self):
        return not np.any(self.values)


class CochainSystem:
    """Differentials of the truncated bar complex as matrices (row convention).

    A 1-cochain H flattened to length r*m maps to d1(H) by H @ D1, and
    similarly for D0 and D2.
    """

    def __init__(self, module):
        self.module = module
        self.algebra = module.algebra
        self.gr = module.algebra.gr

    @cached_property
    def D0(self):
        T, gr = self.module, self.gr
        # d0(t)(lambda_i) = lambda_i . t - t . lambda_i
        d = T.left.transpose(1, 0, 2, 3) - T.right      # (a, i, b)
        return (d.reshape(T.dim, self.algebra.rank * T.dim, gr.d)) % gr.N

    @cached_property
    def D1(self):
        T, gr, A = self.module, self.gr, self.algebra
        r, m = A.rank, T.dim
        D = gr.zeros(r, m, r, r, m)
        eye_r = np.eye(r, dtype=np.int64)
        eye_m = np.eye(m, dtype=np.int64)
        # H[k, a] contributes: lambda_i . h(lambda_j) with j = k
        D += np.einsum("jk,iabz->kaijbz", eye_r, T.left)
        # h(lambda_i) . lambda_j with i = k
        D += np.einsum("ik,ajbz->kaijbz", eye_r, T.right)
        # - h(lambda_i lambda_j): - c[i, j, k] delta_ab
        D -= np.einsum("ijkz,ab->kaijbz", A.constants, eye_m)
        return (D % gr.N).reshape(r * m, r * r * m, gr.d)

    @cached_property
    def D2(self):
        T, gr, A = self.module, self.gr, self.algebra
        r, m = A.rank, T.dim
        D = gr.zeros(r, r, m, r, r, r, m)
        eye_m = np.eye(m, dtype=np.int64)
        # (delta f)(x, y, z) = x f(y, z) - f(xy, z) + f(x, yz) - f(x, y) z;
        # D[k, l, a, x, y, z, b] is the contribution of F[k, l, a]
        for k in range(r):
            for l in range(r):
                D[k, l, :, :, k, l, :] += T.left.transpose(1, 0, 2, 3)
                D[k, l, :, k, l, :, :] -= T.right
                D[k, l, :, k, :, :, :] += np.einsum("yzQ,ab->ayzbQ", A.constants[:, :, l, :], eye_m)
                D[k, l, :, :, :, l, :] -= np.einsum("xyQ,ab->axybQ", A.constants[:, :, k, :], eye_m)
        return (D % gr.N).reshape(r * r * m, r * r * r * m, gr.d)

    def d1_values(self, H):
        A, T, gr = self.algebra, self.module, self.gr
        t1 = gr.einsum("ja,iab->ijb", H, T.left)
        t2 = gr.einsum("ia,ajb->ijb", H, T.right)
        t3 = gr.einsum("ijw,wb->ijb", A.constants, H)
        return (t1 + t2 - t3) % gr.N

    def coboundary_defect(self, F):
        """(delta F)[x, y, z, b] for a 2-cochain table F."""
        A, T, gr = self.algebra, self.module, self.gr
        c = A.constants
        t1 = gr.einsum("xab,yza->xyzb", T.left, F)
        t2 = gr.einsum("xyw,wzb->xyzb", c, F)
        t3 = gr.einsum("yzw,xwb->xyzb", c, F)
        t4 = gr.einsum("xya,azb->xyzb", F, T.right)
        return (t1 - t2 + t3 - t4) % gr.N

    @cached_property
    def d1_solver(self):
        return self.gr.row_solver(self.D1)

    @cached_property
    def cocycles_1(self):
        """Generators of Z^1 (flattened 1-cochains)."""
        return self.d1_solver.kernel

    @cached_property
    def cocycles_2(self):
        """Generators of Z^2 (flattened 2-cochains)."""
        return self.gr.row_solver(self.D2).kernel


def d1(h):
    """(d1 h)(x, y) = x h(y) + h(x) y - h(xy)."""
    return Cochain2(h.module, h.module.system.d1_values(h.values))


def is_2cocycle(g, twist=None):
    """Check the 2-cocycle identity on all basis triples.

    With ``twist`` (a morphism a of the algebra) the values are read in the
    bimodule with x . t = a(x) t and t . y = t a(y).
    """
    from ..morphisms import Certificate

    module = g.module
    if twist is not None:
        module = Bimodule.twisted(module.algebra, twist, twist)
    defect = module.system.coboundary_defect(g.values)
    bad = np.argwhere(np.any(defect, axis=(-1, -2)))
    if bad.size:
        return Certificate(False, tuple(int(x) for x in bad[0]), "2-cocycle identity fails")
    return Certificate(True)


def cocycle_basis(module):
    """A spanning set of the 2-cocycles with values in ``module``."""
    A = module.algebra
    return [Cochain2(module, k.reshape(A.rank, A.rank, module.dim, A.gr.d))
            for k in module.system.cocycles_2]


def solve_coboundary(g, s, precision=None):
    """h with p**s * g == d1(h), computed modulo p**precision (default: full).

    Raises NotCoboundary when no such h exists at that precision.
    """
    module = g.module
    A = module.algebra
    n = A.ring.n
    m = n if precision is None else precision
    if not 1 <= m <= n:
        raise SchemaError(f"precision {m} outside 1..{n}")
    work = module if m == n else module.truncate(m)
    gr = work.algebra.gr
    rhs = (g.values * (A.gr.p**s)) % gr.N
    try:
        part, _ = work.system.d1_solver.solve(rhs.reshape(-1, gr.d))
    except NoSolution as exc:
        raise NotCoboundary(f"p^{s} * g is not a coboundary modulo p^{m}",
                            witness=exc.witness) from None
    return Cochain1(work, part.reshape(A.rank, module.dim, gr.d))


@dataclass
class H1Report:
    exponents: list             # invariant factors p**e of H^1 as a module over W_n(F_q)
    cocycle_generators: int
    coboundary_generators: int

    def annihilator_exponent(self):
        return max(self.exponents, default=0)

    def to_json(self):
        return {"exponents": self.exponents, "z1_generators": self.cocycle_generators,
                "b1_generators": self.coboundary_generators}


def h1_invariants(A, T=None, guards=DEFAULT):
    """Invariant-factor exponents of H^1(A, T) = Z^1 / B^1 (T defaults to A itself)."""
    T = Bimodule.regular(A) if T is None else T
    if T.algebra != A:
        raise RingMismatch("bimodule is over a different algebra")
    guards.check("max_rank", A.rank * T.dim, "1-cochain dimension")
    sysm = T.system
    gr = A.gr
    Z = [gr.flat_vec(z) for z in sysm.cocycles_1]
    B = list(gr.flatten(sysm.D0))
    N = gr.N
    k = len(Z)
    if k == 0:
        return H1Report([], 0, len(B))
    stacked = np.array(Z + B, dtype=np.int64) % N
    # relations among the generators z_i modulo the coboundaries
    rel = [v[:k] for v in kernel_mod(stacked.T, N)]
    exps = smith_exponents(np.array(rel).reshape(-1, k) if rel else np.zeros((0, k), np.int64), N, k)
    # as a W_n(F_q)-module every invariant factor appears deg times over Z/p**n
    exps = exps[::gr.d] if gr.d > 1 else exps
    return H1Report(exps, k, len(B))
