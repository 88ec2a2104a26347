"""Standard algebras: group algebras, matrix rings, enveloping algebras, corners."""
from dataclasses import dataclass

import numpy as np

from ..errors import NonFreeCorner, NoSolution, NotIdempotent, RingMismatch
from ..guards import DEFAULT
from ..cohomology.howell import rank_mod_p
from .core import AlgebraElement, StructureConstantAlgebra


def group_algebra(G, ring, name=None):
    """W_n(F_q)[G] in the basis of group elements (basis index = group index)."""
    gr = ring.gr
    m = G.order
    c = gr.zeros(m, m, m)
    for g in range(m):
        for h in range(m):
            c[g, h, G.mult[g][h], 0] = 1
    ident = gr.zeros(m)
    ident[G.identity, 0] = 1
    alg = StructureConstantAlgebra(ring, c, ident, separable_ambient=True,
                                   name=name or f"{ring!r}[{G.name or G.order}]")
    alg.group = G
    return alg


class MatrixAlgebra(StructureConstantAlgebra):
    """M_m(A) with basis E_ab (x) lambda_i at index (a*m + b)*r + i."""

    def __init__(self, base, m, constants, identity):
        super().__init__(base.ring, constants, identity, base.separable_ambient,
                         name=f"M_{m}({base.name or base.rank})")
        self.base = base
        self.size = m

    def index(self, a, b, i):
        return (a * self.size + b) * self.base.rank + i

    def embed(self, a, b, x):
        """The element E_ab (x) x for x in the base algebra."""
        coords = self.gr.zeros(self.rank)
        start = self.index(a, b, 0)
        coords[start:start + self.base.rank] = x.coords
        return AlgebraElement(self, coords)

    def unit(self, a, b):
        return self.embed(a, b, self.base.one)

    @property
    def idempotents(self):
        return [self.unit(a, a) for a in range(self.size)]

    def block(self, x, a, b):
        """The base-algebra entry at position (a, b) of x."""
        start = self.index(a, b, 0)
        return AlgebraElement(self.base, x.coords[start:start + self.base.rank])


def matrix_ring(A, m, guards=DEFAULT):
    if m < 1:
        raise ValueError("matrix size must be >= 1")
    r = A.rank
    guards.check("max_rank", m * m * r, "matrix ring rank")
    gr = A.gr
    R = m * m * r
    c = gr.zeros(R, R, R)
    for a in range(m):
        for b in range(m):
            for e in range(m):
                # E_ab E_be = E_ae
                src1 = (a * m + b) * r
                src2 = (b * m + e) * r
                dst = (a * m + e) * r
                c[src1:src1 + r, src2:src2 + r, dst:dst + r] = A.constants
    ident = gr.zeros(R)
    for a in range(m):
        start = (a * m + a) * r
        ident[start:start + r] = A.one.coords
    return MatrixAlgebra(A, m, c, ident)


def tensor_opposite(A, guards=DEFAULT):
    """A (x) A^op with basis lambda_i (x) lambda_i' at index i*r + i'."""
    r = A.rank
    guards.check("max_rank", r * r, "enveloping algebra rank")
    gr = A.gr
    c = A.constants
    # (i,i')(j,j') -> sum c[i,j,v] c[j',i',v'] (v,v')
    t = gr.einsum("ijv,kLw->iLjkvw", c, c)
    big = t.reshape(r * r, r * r, r * r, gr.d)
    ident = gr.einsum("i,j->ij", A.one.coords, A.one.coords).reshape(r * r, gr.d)
    name = f"{A.name or A.rank}(x){A.name or A.rank}^op"
    return StructureConstantAlgebra(A.ring, big, ident, A.separable_ambient, name)


@dataclass
class Condensation:
    """eAe as an algebra, with inclusion rows (basis of eAe in A-coordinates)."""

    source: StructureConstantAlgebra
    idempotent: AlgebraElement
    algebra: StructureConstantAlgebra
    inclusion: np.ndarray          # (k, r, d)
    solver: object

    def include(self, y):
        """The element of A corresponding to y in eAe."""
        if y.parent != self.algebra:
            raise RingMismatch("element is not in the condensed algebra")
        gr = self.source.gr
        return AlgebraElement(self.source, gr.einsum("k,kv->v", y.coords, self.inclusion))

    def restrict(self, x):
        """Coordinates in eAe of an element x of A lying in eAe (NoSolution otherwise)."""
        part, _ = self.solver.solve(x.coords)
        y = AlgebraElement(self.algebra, part)
        if self.include(y) != x:
            raise NoSolution("element does not lie in the corner")
        return y


def _fp_rows(gr, vecs):
    """F_p coordinates of the GR-multiples x**k * v (k < d) of each vector, reduced mod p."""
    rows = []
    for v in vecs:
        for k in range(gr.d):
            xk = gr.zero
            xk[k] = 1
            rows.append((gr.mul(v, xk) % gr.p).reshape(-1))
    return rows


def condense(A, e, guards=DEFAULT):
    """The corner algebra eAe for an idempotent e, with its inclusion into A.

    A basis is chosen greedily among e*lambda_i*e by independence mod p;
    every generator must then lie in its span, otherwise NonFreeCorner.
    """
    if e.parent != A:
        raise RingMismatch("idempotent is not in the algebra")
    if e * e != e:
        raise NotIdempotent("e*e != e", witness=e)
    gr = A.gr
    gens = [(e * b * e).coords for b in A.basis_elements()]
    chosen, fp = [], []
    for g in gens:
        trial = fp + _fp_rows(gr, [g])
        if rank_mod_p(np.array(trial), gr.p) == len(trial):
            chosen.append(g)
            fp = trial
    k = len(chosen)
    if k == 0:
        raise NonFreeCorner("the corner is zero")
    B = np.array(chosen, dtype=np.int64)
    solver = gr.row_solver(B)
    for i, g in enumerate(gens):
        try:
            part, _ = solver.solve(g)
        except NoSolution:
            raise NonFreeCorner(f"e*l{i}*e is not in the span of an independent basis",
                                witness=i) from None
        if not np.array_equal(gr.vecmat(part, B), g % gr.N):
            raise NonFreeCorner(f"e*l{i}*e is not in the span of an independent basis", witness=i)
    c = gr.zeros(k, k, k)
    for a in range(k):
        for b in range(k):
            prod = A._mul(B[a], B[b])
            c[a, b], _ = solver.solve(prod)
    ident, _ = solver.solve(e.coords)
    name = f"e{A.name or A.rank}e"
    corner = StructureConstantAlgebra(A.ring, c, ident, A.separable_ambient, name)
    return Condensation(A, e, corner, B, solver)
