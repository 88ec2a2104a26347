"""Orders over W_n(F_q) presented by structure constants.

An algebra of rank r has a basis lambda_0..lambda_{r-1} with
lambda_i * lambda_j = sum_v c[i, j, v] * lambda_v.  Scalars are held in the
Galois-ring model (see ``coeffs.galois``): constants are an int64 array of
shape (r, r, r, d) and elements are (r, d) arrays.
"""
import numpy as np

from ..coeffs.witt import WittRing, WittScalar
from ..errors import (AssociativityViolation, IdentityViolation, NotAUnit, RingMismatch,
                      SchemaError)


def _as_scalars(gr, data, shape):
    """Accept GR arrays, nested WittScalar lists, or plain integers."""
    if isinstance(data, np.ndarray) and data.dtype != object:
        return gr.asarray(data, shape)
    flat = np.asarray(data, dtype=object)
    if flat.size and isinstance(flat.reshape(-1)[0], WittScalar):
        out = gr.zeros(*shape)
        for idx in np.ndindex(*shape):
            out[idx] = gr.from_witt(flat[idx])
        return out
    return gr.asarray(np.asarray(data, dtype=np.int64), shape)


class StructureConstantAlgebra:
    """A W_n(F_q)-order with basis given by structure constants.

    Use :func:`make_algebra` to build a validated instance; the constructor
    itself does no checking.
    """

    def __init__(self, ring, constants, identity, separable_ambient=False, name=None):
        if not isinstance(ring, WittRing):
            raise SchemaError("algebra ring must be a WittRing")
        self.ring = ring
        self.gr = ring.gr
        c = np.asarray(constants, dtype=np.int64)
        if c.ndim != 4 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2] or c.shape[3] != self.gr.d:
            raise SchemaError(f"constants must have shape (r, r, r, {self.gr.d}), got {c.shape}")
        self.rank = c.shape[0]
        self.constants = c % self.gr.N
        self.constants.setflags(write=False)
        ident = self.gr.asarray(identity, (self.rank,))
        ident.setflags(write=False)
        self._identity = ident
        # caller-asserted, never checked
        self.separable_ambient = bool(separable_ambient)
        self.name = name

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"<algebra {label} over {self.ring!r}>"

    def __eq__(self, other):
        return (isinstance(other, StructureConstantAlgebra) and self.ring == other.ring
                and self.rank == other.rank
                and np.array_equal(self.constants, other.constants)
                and np.array_equal(self._identity, other._identity))

    def __hash__(self):
        return hash((self.ring, self.rank, self.constants.tobytes()))

    # -- elements -------------------------------------------------------------

    def element(self, coords):
        return AlgebraElement(self, _as_scalars(self.gr, coords, (self.rank,)))

    def basis(self, i):
        c = self.gr.zeros(self.rank)
        c[i, 0] = 1
        return AlgebraElement(self, c)

    def basis_elements(self):
        return [self.basis(i) for i in range(self.rank)]

    @property
    def one(self):
        return AlgebraElement(self, self._identity)

    @property
    def zero(self):
        return AlgebraElement(self, self.gr.zeros(self.rank))

    def scalar(self, k):
        """The image of the integer k."""
        return AlgebraElement(self, self._identity * (k % self.gr.N) % self.gr.N)

    def random_element(self, rng):
        return AlgebraElement(self, rng.integers(0, self.gr.N, size=(self.rank, self.gr.d)))

    def elements(self):
        """Every element (tiny algebras only)."""
        from itertools import product

        size = self.rank * self.gr.d
        for flat in product(range(self.gr.N), repeat=size):
            yield AlgebraElement(self, np.array(flat, dtype=np.int64).reshape(self.rank, self.gr.d))

    # -- raw coordinate arithmetic ---------------------------------------------

    def _mul(self, a, b):
        t = self.gr.einsum("i,ijv->jv", a, self.constants)
        return self.gr.einsum("j,jv->v", b, t)

    def left_matrix(self, a):
        """Column convention: (left @ x)_v = (a * x)_v."""
        return self.gr.einsum("i,ijv->vj", a, self.constants)

    def right_matrix(self, a):
        return self.gr.einsum("j,ijv->vi", a, self.constants)

    # -- validation ---------------------------------------------------------------

    def associativity_witness(self):
        """First basis triple (i, j, l) with (ij)l != i(jl), or None."""
        c = self.constants
        lhs = self.gr.einsum("ijw,wlv->ijlv", c, c)
        rhs = self.gr.einsum("jlw,iwv->ijlv", c, c)
        bad = np.argwhere(np.any(lhs != rhs, axis=(-1, -2)))
        if bad.size:
            return tuple(int(x) for x in bad[0])
        return None

    def identity_witness(self):
        """First basis index i with e*lambda_i != lambda_i or lambda_i*e != lambda_i, or None."""
        eye = self.gr.identity(self.rank)
        left = self.gr.einsum("i,ijv->jv", self._identity, self.constants)
        right = self.gr.einsum("j,ijv->iv", self._identity, self.constants)
        bad = np.any(left != eye, axis=(1, 2)) | np.any(right != eye, axis=(1, 2))
        idx = np.nonzero(bad)[0]
        return int(idx[0]) if idx.size else None

    def validate(self):
        w = self.associativity_witness()
        if w is not None:
            raise AssociativityViolation(f"(l{w[0]} l{w[1]}) l{w[2]} != l{w[0]} (l{w[1]} l{w[2]})",
                                         witness=w)
        w = self.identity_witness()
        if w is not None:
            raise IdentityViolation(f"identity does not fix basis element {w}", witness=w)
        return self

    def is_commutative(self):
        return bool(np.array_equal(self.constants, self.constants.transpose(1, 0, 2, 3)))

    # -- derived algebras ---------------------------------------------------------

    def truncate(self, m):
        """The same constants read in W_m, m <= n (cached)."""
        if m == self.ring.n:
            return self
        cache = self.__dict__.setdefault("_truncations", {})
        if m not in cache:
            ring = self.ring.truncate(m)
            N = ring.p**m
            cache[m] = StructureConstantAlgebra(ring, self.constants % N, self._identity % N,
                                                self.separable_ambient, self.name)
        return cache[m]

    def change_basis(self, P):
        """Algebra in the basis mu_a = sum_j P[a, j] lambda_j (P invertible, row convention)."""
        gr = self.gr
        P = gr.asarray(P, (self.rank, self.rank))
        Pinv = gr.mat_inv(P)
        t = gr.einsum("ai,ijv->ajv", P, self.constants)
        t = gr.einsum("bj,ajv->abv", P, t)
        new = gr.einsum("abv,vw->abw", t, Pinv)
        ident = gr.vecmat(self._identity, Pinv)
        return StructureConstantAlgebra(self.ring, new, ident, self.separable_ambient, self.name)


def make_algebra(constants, identity, ring, separable_ambient=False, name=None):
    """Build and validate an algebra; raises AssociativityViolation / IdentityViolation."""
    gr = ring.gr
    r = len(constants)
    consts = _as_scalars(gr, constants, (r, r, r))
    ident = _as_scalars(gr, identity, (r,))
    return StructureConstantAlgebra(ring, consts, ident, separable_ambient, name).validate()


class AlgebraElement:
    """An element of a structure-constant algebra, as a coordinate vector."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        coords = np.array(coords, dtype=np.int64) % parent.gr.N
        if coords.shape != (parent.rank, parent.gr.d):
            raise SchemaError(f"element needs {parent.rank} coordinates")
        coords.setflags(write=False)
        self.parent = parent
        self.coords = coords

    def _check(self, other):
        if isinstance(other, int):
            return self.parent.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.parent is not self.parent and other.parent != self.parent:
            raise RingMismatch("elements belong to different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.parent, self.coords + other.coords)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.parent, -self.coords)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.parent, self.coords - other.coords)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return multiply(other, self)

    def scale(self, s):
        """Multiply by a scalar of W_n(F_q) (GR array or WittScalar)."""
        gr = self.parent.gr
        if isinstance(s, WittScalar):
            s = gr.from_witt(s)
        s = np.asarray(s, dtype=np.int64)
        if s.ndim == 0:
            s = gr.scalar(int(s))
        return AlgebraElement(self.parent, gr.mul(self.coords, s[None, :]))

    def __pow__(self, e):
        result, base = self.parent.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.parent == other.parent
                and np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords.tobytes())

    def __repr__(self):
        if self.parent.gr.d == 1:
            return f"Element({self.coords[:, 0].tolist()})"
        return f"Element({self.coords.tolist()})"

    def is_zero(self):
        return not np.any(self.coords)

    def witt_coords(self):
        gr = self.parent.gr
        return [gr.to_witt(c) for c in self.coords]

    def is_unit(self):
        return self.parent.gr.is_invertible(self.parent.left_matrix(self.coords))

    def inverse(self):
        return unit_inverse(self)


def multiply(a, b):
    if a.parent != b.parent:
        raise RingMismatch("elements belong to different algebras")
    return AlgebraElement(a.parent, a.parent._mul(a.coords, b.coords))


def regular_reps(a):
    """(left, right) matrices of x -> a*x and x -> x*a, acting on coordinate columns."""
    return a.parent.left_matrix(a.coords), a.parent.right_matrix(a.coords)


def unit_inverse(a):
    """a**-1 via the linear solve left(a) x = identity; NotAUnit if left(a) is singular mod p."""
    A = a.parent
    gr = A.gr
    left = A.left_matrix(a.coords)
    if not gr.is_invertible(left):
        raise NotAUnit("left multiplication is singular modulo p", witness=a)
    inv = gr.mat_inv(left)
    # column convention: x = inv @ identity
    x = gr.einsum("vj,j->v", inv, A._identity)
    result = AlgebraElement(A, x)
    if multiply(result, a) != A.one:
        # a one-sided inverse in an order is two-sided; this guards the model
        raise NotAUnit("no two-sided inverse", witness=a)
    return result
