"""Exact linear algebra over the chain ring Z/p**n.

The central object is the Howell form of a matrix: a row echelon form with
pivots p**v whose rows span the same module and which has the Howell
property (for every pivot row of valuation v, p**(n-v) times the row lies
in the span of the later rows).  With it, membership, particular solutions
and kernels are read off by plain row reduction.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import NoSolution, NotAUnit, SchemaError


def prime_power(N):
    """(p, n) with N == p**n."""
    if N < 2:
        raise SchemaError(f"modulus {N} is not a prime power")
    p = 2
    while N % p:
        p += 1
    n, m = 0, N
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise SchemaError(f"modulus {N} is not a prime power")
    return p, n


def valuations(x, p, n):
    """Elementwise p-adic valuation of integers mod p**n (n for zero)."""
    x = np.asarray(x, dtype=np.int64) % p**n
    v = np.zeros(x.shape, dtype=np.int64)
    for e in range(1, n + 1):
        v += (x % p**e == 0)
    return v


@dataclass
class HowellForm:
    rows: np.ndarray            # (k, c) with pivots in increasing columns
    pivots: list                # (column, valuation) per row
    modulus: int

    def reduce(self, vec, stop_col=None):
        """Reduce ``vec`` by the rows with pivot column < stop_col.

        Returns (residual, coefficients, failing_column or None).
        """
        N = self.modulus
        p, _ = prime_power(N)
        vec = np.array(vec, dtype=np.int64) % N
        coeffs = np.zeros(len(self.pivots), dtype=np.int64)
        for k, (col, v) in enumerate(self.pivots):
            if stop_col is not None and col >= stop_col:
                break
            pv = p**v
            entry = int(vec[col])
            if entry % pv:
                return vec, coeffs, col
            c = entry // pv
            if c:
                vec = (vec - c * self.rows[k]) % N
                coeffs[k] = c
        return vec, coeffs, None

    def contains(self, vec):
        residual, _, fail = self.reduce(vec)
        return fail is None and not np.any(residual)


def howell_form(a, N):
    """Howell form of the row module of ``a`` over Z/N (N a prime power).

    Pivot choice: columns left to right; within a column the entry of least
    valuation, ties to the lowest row.
    """
    p, n = prime_power(N)
    work = np.array(a, dtype=np.int64) % N
    if work.ndim != 2:
        raise SchemaError("howell_form expects a matrix")
    ncols = work.shape[1]
    out_rows, pivots = [], []
    for col in range(ncols):
        if work.shape[0] == 0:
            break
        column = work[:, col]
        nz = np.nonzero(column)[0]
        if nz.size == 0:
            continue
        vals = valuations(column[nz], p, n)
        idx = int(nz[int(np.argmin(vals))])
        v = int(vals.min())
        pv = p**v
        row = work[idx]
        unit = int(row[col]) // pv
        row = row * pow(unit, -1, N) % N
        work = np.delete(work, idx, axis=0)
        if work.shape[0]:
            factors = work[:, col] // pv
            work = (work - np.outer(factors, row)) % N
            work = work[np.any(work, axis=1)]
        if v:
            ann = row * p ** (n - v) % N
            if np.any(ann):
                work = np.vstack([work, ann[None, :]])
        out_rows.append(row)
        pivots.append((col, v))
    rows = np.array(out_rows, dtype=np.int64).reshape(len(out_rows), ncols)
    # canonical reduction of entries above each pivot
    for k, (col, v) in enumerate(pivots):
        pv = p**v
        for j in range(k):
            q = int(rows[j, col]) // pv
            if q:
                rows[j] = (rows[j] - q * rows[k]) % N
    return HowellForm(rows, pivots, N)


@dataclass
class Solution:
    particular: np.ndarray
    kernel: list = field(default_factory=list)

    def all_solutions(self, N):
        """Enumerate every solution (small systems only)."""
        from itertools import product

        seen = set()
        span = [np.zeros_like(self.particular)]
        for g in self.kernel:
            new = []
            for base in span:
                for c in range(N):
                    new.append((base + c * g) % N)
            uniq = {}
            for vec in new:
                uniq[vec.tobytes()] = vec
            span = list(uniq.values())
        for vec in span:
            x = (self.particular + vec) % N
            seen.add(tuple(int(t) for t in x))
        return sorted(seen)


class LinearSystemOverChain:
    """The system A x = b over Z/N, with a cached Howell form.

    One Howell computation serves any number of right-hand sides.
    """

    def __init__(self, matrix, modulus):
        self.matrix = np.array(matrix, dtype=np.int64) % modulus
        if self.matrix.ndim != 2:
            raise SchemaError("system matrix must be two-dimensional")
        self.modulus = modulus
        self.p, self.n = prime_power(modulus)

    @cached_property
    def howell(self):
        m, k = self.matrix.shape
        aug = np.hstack([self.matrix.T, np.eye(k, dtype=np.int64)])
        return howell_form(aug, self.modulus)

    @cached_property
    def kernel(self):
        m, _ = self.matrix.shape
        H = self.howell
        return [H.rows[i, m:].copy() for i, (col, _) in enumerate(H.pivots) if col >= m]

    @cached_property
    def _kernel_form(self):
        k = self.matrix.shape[1]
        if not self.kernel:
            return howell_form(np.zeros((0, k), dtype=np.int64), self.modulus)
        return howell_form(np.array(self.kernel), self.modulus)

    def solve(self, rhs):
        N = self.modulus
        m, k = self.matrix.shape
        rhs = np.array(rhs, dtype=np.int64).reshape(-1) % N
        if rhs.shape != (m,):
            raise SchemaError(f"right-hand side has length {rhs.shape[0]}, expected {m}")
        vec = np.concatenate([rhs, np.zeros(k, dtype=np.int64)])
        residual, _, fail = self.howell.reduce(vec, stop_col=m)
        if fail is not None or np.any(residual[:m]):
            raise NoSolution("linear system is inconsistent", witness=self._certificate(rhs))
        x = (-residual[m:]) % N
        x, _, _ = self._kernel_form.reduce(x)
        return Solution(x % N, [g.copy() for g in self.kernel])

    def _certificate(self, rhs):
        left = LinearSystemOverChain(self.matrix.T, self.modulus)
        for y in left.kernel:
            if int(y @ rhs % self.modulus):
                return y
        raise AssertionError("inconsistent system without a left-kernel certificate")

    def to_json(self):
        return {"matrix": self.matrix.tolist(), "modulus": self.modulus}


def howell_solve(a, b, N):
    """Solve a @ x == b over Z/N; returns a :class:`Solution` or raises NoSolution."""
    return LinearSystemOverChain(a, N).solve(b)


def kernel_mod(a, N):
    """Generators of {x : a @ x == 0} over Z/N."""
    return LinearSystemOverChain(a, N).kernel


def row_span_contains(rows, vec, N):
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return not np.any(np.asarray(vec) % N)
    return howell_form(rows, N).contains(vec)


def rank_mod_p(a, p):
    """Rank of an integer matrix reduced mod p."""
    work = np.array(a, dtype=np.int64) % p
    if work.size == 0:
        return 0
    rank = 0
    rows, cols = work.shape
    for col in range(cols):
        nz = np.nonzero(work[rank:, col])[0]
        if nz.size == 0:
            continue
        idx = rank + int(nz[0])
        work[[rank, idx]] = work[[idx, rank]]
        work[rank] = work[rank] * pow(int(work[rank, col]), -1, p) % p
        others = np.arange(rows) != rank
        work[others] = (work[others] - np.outer(work[others, col], work[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def independent_rows_mod_p(a, p):
    """Indices of a greedy maximal subset of rows independent mod p."""
    a = np.asarray(a, dtype=np.int64) % p
    chosen, basis = [], []
    for i, row in enumerate(a):
        trial = basis + [row]
        if rank_mod_p(np.array(trial), p) == len(trial):
            basis.append(row)
            chosen.append(i)
    return chosen


def inverse_mod(a, N, p=None):
    """Inverse of a square matrix over Z/N (invertible iff invertible mod p)."""
    if p is None:
        p, _ = prime_power(N)
    a = np.array(a, dtype=np.int64) % N
    r = a.shape[0]
    if a.shape != (r, r):
        raise SchemaError("inverse_mod needs a square matrix")
    work = np.hstack([a, np.eye(r, dtype=np.int64)])
    for col in range(r):
        nz = np.nonzero(work[col:, col] % p)[0]
        if nz.size == 0:
            raise NotAUnit("matrix is singular modulo p", witness=col)
        idx = col + int(nz[0])
        work[[col, idx]] = work[[idx, col]]
        work[col] = work[col] * pow(int(work[col, col]), -1, N) % N
        others = np.arange(r) != col
        work[others] = (work[others] - np.outer(work[others, col], work[col])) % N
    return work[:, r:].copy()


def smith_exponents(rows, N, ncols):
    """Exponents e_i with (Z/N)**ncols / rowspan(rows) = sum Z/p**e_i (e_i > 0 only)."""
    p, n = prime_power(N)
    work = np.array(rows, dtype=np.int64).reshape(-1, ncols) % N
    diag = []
    t = 0
    while t < min(work.shape):
        sub = work[t:, t:]
        if not np.any(sub):
            break
        vals = valuations(sub, p, n)
        vals[sub == 0] = n + 1
        i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
        v = int(vals[i, j])
        i += t
        j += t
        work[[t, i]] = work[[i, t]]
        work[:, [t, j]] = work[:, [j, t]]
        pv = p**v
        unit = int(work[t, t]) // pv
        work[t] = work[t] * pow(unit, -1, N) % N
        others = np.arange(work.shape[0]) != t
        work[others] = (work[others] - np.outer(work[others, t] // pv, work[t])) % N
        col_factors = work[t, :] // pv
        col_factors[t] = 0
        work = (work - np.outer(work[:, t], col_factors)) % N
        diag.append(v)
        t += 1
    exps = diag + [n] * (ncols - len(diag))
    return sorted(e for e in exps if e > 0)
