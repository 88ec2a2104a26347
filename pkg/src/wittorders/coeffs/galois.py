"""Vectorized arithmetic in W_n(F_q) through its Galois-ring model.

W_n(F_q) is isomorphic to GR = (Z/p**n)[x]/(F) where F is the field
modulus lifted to integer coefficients in [0, p).  Scalars are numpy
int64 arrays whose last axis (length ``deg``) holds the coordinates in the
basis 1, x, ..., x**(deg-1).  The isomorphism with Witt coordinates is

    (u_0, u_1, ...) -> sum_i p**i * t(u_i ** (p**-i))

with t the Teichmuller lift, computed in GR as a**(q**(n-1)).
"""
import numpy as np

from ..errors import NotAUnit, SchemaError

_SAFE = 2**62


class GaloisRing:
    def __init__(self, witt):
        self.witt = witt
        self.p = witt.p
        self.n = witt.n
        self.d = witt.deg
        self.N = self.p**self.n
        if self.N >= 2**31:
            raise SchemaError(f"modulus p**n = {self.N} too large for int64 arithmetic")
        self.table = self._build_table([int(c) for c in witt.field.modulus])
        self._teich_cache = {}

    def _build_table(self, modulus):
        d, N = self.d, self.N
        # powers x^0 .. x^(2d-2) reduced mod F over Z/N
        powers = []
        cur = [1] + [0] * (d - 1)
        for _ in range(2 * d - 1):
            powers.append(cur)
            # multiply by x
            shifted = [0] + cur
            top = shifted[d]
            nxt = [(shifted[i] - top * modulus[i]) % N for i in range(d)]
            cur = nxt
        t = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                t[i, j] = powers[i + j]
        return t

    def __repr__(self):
        return f"GR({self.p}^{self.n}, {self.d})"

    def __eq__(self, other):
        return isinstance(other, GaloisRing) and self.witt == other.witt

    def __hash__(self):
        return hash(("GR", self.witt))

    # -- basic elements ---------------------------------------------------

    def scalar(self, k):
        out = np.zeros(self.d, dtype=np.int64)
        out[0] = k % self.N
        return out

    @property
    def zero(self):
        return np.zeros(self.d, dtype=np.int64)

    @property
    def one(self):
        return self.scalar(1)

    def zeros(self, *shape):
        return np.zeros(shape + (self.d,), dtype=np.int64)

    def identity(self, r):
        out = self.zeros(r, r)
        out[np.arange(r), np.arange(r), 0] = 1
        return out

    def asarray(self, data, shape):
        """Coerce data to an array of scalars of the given (outer) shape.

        Plain integers are accepted over a prime base field.
        """
        arr = np.asarray(data, dtype=np.int64)
        shape = tuple(shape)
        if arr.shape == shape + (self.d,):
            return arr % self.N
        if arr.shape == shape and self.d == 1:
            return arr[..., None] % self.N
        raise SchemaError(f"expected scalars of shape {shape}, got array of shape {arr.shape}")

    def reduce(self, arr):
        return np.asarray(arr, dtype=np.int64) % self.N

    # -- arithmetic ---------------------------------------------------------

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.d == 1:
            return (a * b) % self.N
        outer = (a[..., :, None] * b[..., None, :]) % self.N
        return np.tensordot(outer, self.table, axes=([-2, -1], [0, 1])) % self.N

    def einsum(self, subscripts, a, b):
        """Binary einsum where each operand carries a trailing scalar axis."""
        lhs, out = subscripts.replace(" ", "").split("->")
        sa, sb = lhs.split(",")
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        sizes = {}
        for s, arr in ((sa, a), (sb, b)):
            for ch, dim in zip(s, arr.shape[:-1]):
                sizes[ch] = dim
        contracted = 1
        for ch in set(sa + sb) - set(out):
            contracted *= sizes[ch]
        big = self.N * self.N * max(contracted, 1) * self.d >= _SAFE
        if big:
            a = a.astype(object)
            b = b.astype(object)
        if self.d == 1:
            res = np.einsum(f"{sa},{sb}->{out}", a[..., 0], b[..., 0]) % self.N
            return np.asarray(res, dtype=np.int64)[..., None]
        pair = np.einsum(f"{sa}Y,{sb}Z->{out}YZ", a, b) % self.N
        res = np.tensordot(pair, self.table, axes=([-2, -1], [0, 1])) % self.N
        return np.asarray(res, dtype=np.int64)

    def matmul(self, a, b):
        return self.einsum("ij,jk->ik", a, b)

    def vecmat(self, v, m):
        return self.einsum("i,ij->j", v, m)

    def is_unit(self, a):
        return bool(np.any(np.asarray(a) % self.p))

    def valuation(self, a):
        """p-adic valuation of an array of scalars (minimum over entries)."""
        a = np.asarray(a, dtype=np.int64) % self.N
        if not np.any(a):
            return self.n
        v = 0
        while not np.any(a % self.p**(v + 1)):
            v += 1
        return v

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64) % self.N
        if not self.is_unit(a):
            raise NotAUnit("scalar is not a unit")
        if self.d == 1:
            return np.array([pow(int(a[0]), -1, self.N)], dtype=np.int64)
        f = self.witt.field
        code = f.encode([int(c) % self.p for c in a])
        y = self.lift_code(f.inv(code))
        # Newton iteration y <- y (2 - a y) doubles the p-adic precision
        two = self.scalar(2)
        prec = 1
        while prec < self.n:
            y = self.mul(y, (two - self.mul(a, y)) % self.N)
            prec *= 2
        return y

    def pow(self, a, e):
        result, base = self.one, np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- matrices -------------------------------------------------------------

    def mulmat(self, s):
        """Row-convention matrix of y -> y*s on coordinates (d x d)."""
        return np.tensordot(np.asarray(s, dtype=np.int64), self.table, axes=([0], [1])) % self.N

    def flatten(self, m):
        """(r, c, d) matrix over GR -> (r*d, c*d) matrix over Z/N, row convention.

        A row vector xi satisfies flat(xi) @ flatten(m) == flat(xi @ m).
        """
        m = np.asarray(m, dtype=np.int64)
        r, c = m.shape[:2]
        if self.d == 1:
            return m[..., 0] % self.N
        # blocks[i, j, k, l] = sum_s m[i, j, s] * T[k, s, l]
        blocks = np.einsum("ijs,ksl->ikjl", m, self.table) % self.N
        return blocks.reshape(r * self.d, c * self.d)

    def unflatten(self, flat, r, c):
        flat = np.asarray(flat, dtype=np.int64) % self.N
        if self.d == 1:
            return flat.reshape(r, c)[..., None]
        return flat.reshape(r, self.d, c, self.d)[:, 0, :, :].copy()

    def flat_vec(self, v):
        return np.asarray(v, dtype=np.int64).reshape(-1) % self.N

    def unflat_vec(self, flat):
        return np.asarray(flat, dtype=np.int64).reshape(-1, self.d) % self.N

    def mat_inv(self, m):
        from ..cohomology.howell import inverse_mod

        r = m.shape[0]
        return self.unflatten(inverse_mod(self.flatten(m), self.N, self.p), r, r)

    def is_invertible(self, m):
        from ..cohomology.howell import rank_mod_p

        flat = self.flatten(m)
        return rank_mod_p(flat, self.p) == flat.shape[0] == flat.shape[1]

    def row_solver(self, a):
        return RowSolver(self, a)

    def solve_row(self, a, b):
        """Row vectors y over GR with y @ a == b: (particular, kernel generators)."""
        return self.row_solver(a).solve(b)

    # -- Witt coordinates -------------------------------------------------

    def truncate(self, m):
        return self.witt.truncate(m).gr

    def lift_code(self, code):
        f = self.witt.field
        return np.array(f.decode(code), dtype=np.int64) % self.N

    def teich(self, code):
        if code not in self._teich_cache:
            q = self.witt.field.q
            self._teich_cache[code] = self.pow(self.lift_code(code), q ** (self.n - 1))
        return self._teich_cache[code]

    def from_witt(self, u):
        if u.ring != self.witt:
            from ..errors import RingMismatch

            raise RingMismatch(f"scalar over {u.ring!r}, expected {self.witt!r}")
        f = self.witt.field
        out = self.zero
        for i, code in enumerate(u.codes):
            out = (out + self.p**i * self.teich(f.frobenius_inverse(code, i))) % self.N
        return out

    def to_witt(self, a):
        from .witt import WittScalar

        f = self.witt.field
        x = np.asarray(a, dtype=np.int64) % self.N
        codes = []
        for i in range(self.n):
            digit = f.encode([int(c) % self.p for c in x])
            codes.append(f.frobenius(digit, i))
            x = (x - self.teich(digit)) % self.N
            x = x // self.p
        return WittScalar(self.witt, tuple(codes))


class RowSolver:
    """Solves y @ a == b over GR for many right-hand sides b."""

    def __init__(self, gr, a):
        from ..cohomology.howell import LinearSystemOverChain

        self.gr = gr
        self.a = np.asarray(a, dtype=np.int64)
        self.rows = self.a.shape[0]
        self.system = LinearSystemOverChain(gr.flatten(self.a).T, gr.N)

    @property
    def kernel(self):
        return [self.gr.unflat_vec(k) for k in self.system.kernel]

    def solve(self, b):
        sol = self.system.solve(self.gr.flat_vec(b))
        return self.gr.unflat_vec(sol.particular), self.kernel
