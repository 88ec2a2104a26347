"""Coefficient-linear algebra maps: certification, inner automorphisms, inner equivalence.

Matrices act on coordinate rows: row i of the matrix holds the coordinates
of the image of lambda_i, so a map M sends x to x @ M.  With this
convention the multiplicativity equations read

    sum_{s,t} m[i,s] m[j,t] c[s,t,v] == sum_w c[i,j,w] m[w,v]
"""
from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra.core import AlgebraElement, StructureConstantAlgebra, unit_inverse
from .cohomology.howell import independent_rows_mod_p, rank_mod_p
from .errors import NotAUnit, RingMismatch, SchemaError
from .guards import DEFAULT

UNCHECKED = "unchecked"
AUTOMORPHISM = "automorphism"
REJECTED = "rejected"


@dataclass(frozen=True)
class Certificate:
    """Outcome of a membership check; ``witness`` localizes a failure."""

    ok: bool
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self):
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"ok": self.ok, "witness": w, "reason": self.reason}


class AlgebraMorphism:
    """A coefficient-linear map between algebras given by a matrix."""

    def __init__(self, source, matrix, target=None, certified=UNCHECKED):
        self.source = source
        self.target = source if target is None else target
        if source.ring != self.target.ring:
            raise RingMismatch("source and target have different coefficient rings")
        gr = source.gr
        m = gr.asarray(matrix, (source.rank, self.target.rank))
        m.setflags(write=False)
        self.matrix = m
        if certified not in (UNCHECKED, AUTOMORPHISM, REJECTED):
            raise SchemaError(f"unknown certification status {certified!r}")
        self.certified = certified

    @classmethod
    def identity(cls, A):
        return cls(A, A.gr.identity(A.rank), certified=AUTOMORPHISM)

    @classmethod
    def from_images(cls, A, images, target=None):
        """Map sending lambda_i to images[i]."""
        return cls(A, np.array([x.coords for x in images]), target)

    @property
    def gr(self):
        return self.source.gr

    def with_status(self, status):
        return AlgebraMorphism(self.source, self.matrix, self.target, status)

    def apply(self, x):
        if x.parent != self.source:
            raise RingMismatch("element is not in the source algebra")
        return AlgebraElement(self.target, self.gr.vecmat(x.coords, self.matrix))

    __call__ = apply

    def compose(self, other):
        """self o other (apply ``other`` first)."""
        return compose(self, other)

    def inverse(self):
        if self.source.rank != self.target.rank:
            raise NotAUnit("non-square morphism matrix")
        inv = self.gr.mat_inv(self.matrix)
        return AlgebraMorphism(self.target, inv, self.source, self.certified)

    def truncate(self, m):
        return truncate_morphism(self, m)

    def is_identity(self):
        return self.source == self.target and np.array_equal(self.matrix, self.gr.identity(self.source.rank))

    def witt_matrix(self):
        return [[self.gr.to_witt(c) for c in row] for row in self.matrix]

    def __eq__(self, other):
        return (isinstance(other, AlgebraMorphism) and self.source == other.source
                and self.target == other.target and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        return f"AlgebraMorphism({self.source!r}, status={self.certified})"


def compose(a1, a2):
    """a1 o a2; its matrix is M2 @ M1 in the row convention."""
    if a2.target != a1.source:
        raise RingMismatch("morphisms are not composable")
    status = AUTOMORPHISM if a1.certified == a2.certified == AUTOMORPHISM else UNCHECKED
    return AlgebraMorphism(a2.source, a1.gr.matmul(a2.matrix, a1.matrix), a1.target, status)


def _multiplicativity_defect(M):
    gr = M.gr
    m = M.matrix
    t = gr.einsum("jt,stv->jsv", m, M.target.constants)
    lhs = gr.einsum("is,jsv->ijv", m, t)
    rhs = gr.einsum("ijw,wv->ijv", M.source.constants, m)
    return (lhs - rhs) % gr.N


def check_homomorphism(M, unital=True):
    """Certificate for M(xy) = M(x)M(y) on basis pairs (and M(1) = 1 if unital)."""
    gr = M.gr
    if unital:
        image = gr.vecmat(M.source.one.coords, M.matrix)
        bad = np.nonzero(np.any(image != M.target.one.coords, axis=-1))[0]
        if bad.size:
            return Certificate(False, ("identity", int(bad[0])), "identity is not preserved")
    defect = _multiplicativity_defect(M)
    bad = np.argwhere(np.any(defect, axis=-1))
    if bad.size:
        return Certificate(False, tuple(int(x) for x in bad[0]), "not multiplicative")
    return Certificate(True)


def check_automorphism(M):
    """Invertibility mod p, identity preserved, and the multiplicativity equations."""
    if M.source != M.target:
        return Certificate(False, None, "source and target differ")
    if not M.gr.is_invertible(M.matrix):
        return Certificate(False, ("singular",), "matrix is not invertible modulo p")
    return check_homomorphism(M, unital=True)


def certify(M):
    """Copy of M carrying the status determined by check_automorphism."""
    return M.with_status(AUTOMORPHISM if check_automorphism(M) else REJECTED)


@dataclass
class OLinearityData:
    """Action matrices (row convention) of a coefficient basis of a larger ring O."""

    generators: list

    def __post_init__(self):
        if not self.generators:
            raise SchemaError("O-linearity data needs at least one generator")

    @classmethod
    def from_central_elements(cls, elements):
        """Multiplication by central elements z, as row-convention matrices."""
        return cls([np.ascontiguousarray(z.parent.left_matrix(z.coords).transpose(1, 0, 2))
                    for z in elements])

    @classmethod
    def scalar(cls, A):
        return cls([A.gr.identity(A.rank)])


def check_o_linear(M, data):
    """M commutes with every generator c_a: c_a @ M == M @ c_a."""
    gr = M.gr
    for a, c in enumerate(data.generators):
        c = np.asarray(c, dtype=np.int64)
        if c.shape[:2] != M.matrix.shape[:2]:
            raise SchemaError(f"generator {a} has shape {c.shape[:2]}, expected {M.matrix.shape[:2]}")
        diff = (gr.matmul(c, M.matrix) - gr.matmul(M.matrix, c)) % gr.N
        bad = np.argwhere(np.any(diff, axis=-1))
        if bad.size:
            s, v = (int(x) for x in bad[0])
            return Certificate(False, (a, s, v), "does not commute with the O-action")
    return Certificate(True)


def inner_from_unit(u):
    """The automorphism x -> u x u**-1."""
    A = u.parent
    gr = A.gr
    uinv = unit_inverse(u)
    col = gr.matmul(A.left_matrix(u.coords), A.right_matrix(uinv.coords))
    return AlgebraMorphism(A, col.transpose(1, 0, 2), certified=AUTOMORPHISM)


def truncate_morphism(M, m):
    """Entrywise truncation to W_m; automorphism status is re-verified."""
    if m > M.source.ring.n:
        raise SchemaError(f"cannot truncate precision {M.source.ring.n} to {m}")
    src = M.source.truncate(m)
    tgt = src if M.target is M.source or M.target == M.source else M.target.truncate(m)
    out = AlgebraMorphism(src, M.matrix % src.gr.N, tgt)
    if M.certified == AUTOMORPHISM:
        return certify(out)
    return out


# -- unit search inside a submodule ----------------------------------------------


@dataclass
class UnitSearch:
    status: str                 # "found", "none", "inconclusive"
    unit: object = None
    searched: int = 0
    dimension: int = 0          # F_p-dimension of the residues mod p
    exhaustive: bool = True

    def to_json(self):
        from .serialize import element_to_json

        return {"status": self.status, "searched": self.searched,
                "residue_dimension": self.dimension, "exhaustive": self.exhaustive,
                "unit": None if self.unit is None else element_to_json(self.unit)}


def find_unit(A, generators, guards=DEFAULT, seed=0):
    """Search the module spanned by ``generators`` (coordinate arrays) for a unit of A.

    Unit-ness depends only on the residue mod p, so the search runs over
    the F_p-span of the residues: exhaustively when p**dim is within the
    candidate guard, else by seeded random sampling (then inconclusive).
    """
    gr = A.gr
    p = gr.p
    gens = [np.asarray(g, dtype=np.int64).reshape(A.rank, gr.d) % gr.N for g in generators]
    if not gens:
        return UnitSearch("none", dimension=0)
    # GR-multiples so that residues span the full F_p-space
    lifts = []
    for g in gens:
        for k in range(gr.d):
            xk = gr.zero
            xk[k] = 1
            lifts.append(gr.mul(g, xk[None, :]))
    flat = np.array([x.reshape(-1) for x in lifts]) % p
    idx = independent_rows_mod_p(flat, p)
    basis = [lifts[i] for i in idx]
    dim = len(basis)
    if dim == 0:
        return UnitSearch("none", dimension=0)
    r = A.rank * gr.d

    def is_unit(coords):
        return rank_mod_p(gr.flatten(A.left_matrix(coords)), p) == r

    total = p**dim
    if total <= guards.max_candidates:
        count = 0
        for coeffs in product(range(p), repeat=dim):
            count += 1
            if not any(coeffs):
                continue
            u = sum(c * b for c, b in zip(coeffs, basis)) % gr.N
            if is_unit(u):
                return UnitSearch("found", AlgebraElement(A, u), count, dim)
        return UnitSearch("none", None, count, dim)
    rng = np.random.default_rng(seed)
    stack = np.array(basis)
    for count in range(1, guards.unit_samples + 1):
        coeffs = rng.integers(0, p, size=dim)
        u = np.tensordot(coeffs, stack, axes=(0, 0)) % gr.N
        if is_unit(u):
            return UnitSearch("found", AlgebraElement(A, u), count, dim, exhaustive=False)
    return UnitSearch("inconclusive", None, guards.unit_samples, dim, exhaustive=False)


def intertwiner_generators(A, left_images, right_images):
    """Generators of {u : u * a_j == b_j * u for all j}, a_j = right_images[j], b_j = left_images[j]."""
    gr = A.gr
    r = A.rank
    blocks = []
    for a, b in zip(right_images, left_images):
        # row convention: u -> u*a is right_matrix(a).T, u -> b*u is left_matrix(b).T
        ra = A.right_matrix(a.coords).transpose(1, 0, 2)
        lb = A.left_matrix(b.coords).transpose(1, 0, 2)
        blocks.append((ra - lb) % gr.N)
    big = np.concatenate(blocks, axis=1) if blocks else gr.zeros(r, 0)
    if big.shape[1] == 0:
        return [gr.identity(r)[i] for i in range(r)]
    return gr.row_solver(big).kernel


@dataclass
class InnerEquivalence:
    status: str                 # "yes", "no", "inconclusive"
    witness: object = None
    search: UnitSearch = None

    def to_json(self):
        from .serialize import element_to_json

        return {"status": self.status,
                "witness": None if self.witness is None else element_to_json(self.witness),
                "search": None if self.search is None else self.search.to_json()}


def is_inner_equivalent(a1, a2, guards=DEFAULT, seed=0):
    """Decide whether a1 = iota_u o a2 for a unit u."""
    A = a1.source
    if a2.source != A:
        raise RingMismatch("morphisms act on different algebras")
    basis = A.basis_elements()
    gens = intertwiner_generators(A, [a1(x) for x in basis], [a2(x) for x in basis])
    search = find_unit(A, gens, guards, seed)
    if search.status != "found":
        return InnerEquivalence("no" if search.status == "none" else "inconclusive", None, search)
    u = search.unit
    if compose(inner_from_unit(u), a2).matrix.tobytes() != a1.matrix.tobytes():
        raise AssertionError("inner-equivalence witness failed recomposition")
    return InnerEquivalence("yes", u, search)


def enumerate_automorphisms(A, guards=DEFAULT):
    """All automorphisms of a tiny algebra, by exhaustive search over basis images."""
    gr = A.gr
    r = A.rank
    per_row = gr.N ** (r * gr.d)
    guards.check("max_candidates", per_row**r, "automorphism candidates")
    vectors = np.array(list(product(range(gr.N), repeat=r * gr.d)), dtype=np.int64).reshape(-1, r, gr.d)
    found = []
    for rows in product(range(len(vectors)), repeat=r):
        M = AlgebraMorphism(A, vectors[list(rows)])
        if check_automorphism(M):
            found.append(M.with_status(AUTOMORPHISM))
    return found


def galois_ring_as_algebra(ring, base=None):
    """W_n(F_q) as a rank-deg algebra over W_n(F_p) in the basis 1, x, ..., x**(deg-1)."""
    from .coeffs.witt import WittRing

    gr = ring.gr
    base = base or WittRing.over(ring.p, ring.n)
    ident = np.zeros(gr.d, dtype=np.int64)
    ident[0] = 1
    return StructureConstantAlgebra(base, gr.table[..., None], ident[:, None],
                                    separable_ambient=True, name=f"GR({gr.N},{gr.d})")
