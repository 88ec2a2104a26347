"""Universal Witt addition and multiplication polynomials.

Polynomials live in Z[X_0..X_{n-1}, Y_0..Y_{n-1}] and are stored as
``{exponent_tuple: coefficient}`` with exponent tuples of length 2n
(X exponents first).  They are generated from the ghost components

    w_k(X) = sum_{i<=k} p**i * X_i**(p**(k-i))

by solving sum_{i<=k} p**i S_i**(p**(k-i)) = w_k(X) (+ or *) w_k(Y) for
S_k, dividing exactly by p**k over the integers.
"""
import threading
from dataclasses import dataclass

from ..errors import CostGuardExceeded
from ..guards import DEFAULT


def _padd(a, b, scale=1):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(a, b, bound):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        if len(out) > bound:
            raise CostGuardExceeded(f"Witt polynomial expansion exceeds {bound} monomials")
    return out


def _ppow(a, e, bound, nvars):
    result = {(0,) * nvars: 1}
    while e:
        if e & 1:
            result = _pmul(result, a, bound)
        e >>= 1
        if e:
            a = _pmul(a, a, bound)
    return result


def _var(index, nvars):
    e = [0] * nvars
    e[index] = 1
    return {tuple(e): 1}


def _ghost(p, k, offset, nvars, bound):
    out = {}
    for i in range(k + 1):
        out = _padd(out, _ppow(_var(offset + i, nvars), p ** (k - i), bound, nvars), p**i)
    return out


@dataclass(frozen=True)
class WittPolynomialTable:
    """sigma[i] and mu[i] reduced mod p, as tuples of (coefficient, exponents)."""

    p: int
    n: int
    sigma: tuple
    mu: tuple

    def as_strings(self):
        return {"sigma": [format_poly(s, self.n) for s in self.sigma],
                "mu": [format_poly(m, self.n) for m in self.mu]}

    def term_count(self):
        return sum(len(s) for s in self.sigma) + sum(len(m) for m in self.mu)


def format_poly(terms, n):
    names = [f"X{i}" for i in range(n)] + [f"Y{i}" for i in range(n)]
    parts = []
    for coef, exps in terms:
        mono = "*".join(f"{names[v]}^{e}" if e > 1 else names[v] for v, e in enumerate(exps) if e)
        if not mono:
            parts.append(str(coef))
        elif coef == 1:
            parts.append(mono)
        else:
            parts.append(f"{coef}*{mono}")
    return " + ".join(parts) if parts else "0"


def _solve_recursion(p, n, targets, bound):
    nvars = 2 * n
    found = []
    for k in range(n):
        rest = targets[k]
        for i, s in enumerate(found):
            rest = _padd(rest, _ppow(s, p ** (k - i), bound, nvars), -(p**i))
        pk = p**k
        quotient = {}
        for e, c in rest.items():
            q, r = divmod(c, pk)
            assert r == 0, "ghost recursion must divide exactly"
            quotient[e] = q
        found.append(quotient)
    return found


def _reduce(poly, p):
    terms = [(c % p, e) for e, c in poly.items() if c % p]
    return tuple(sorted(terms, key=lambda t: t[1], reverse=True))


_CACHE = {}
_LOCK = threading.Lock()


def gen_witt_polys(p, n, max_monomials=None):
    """Witt sum/product polynomials for length-n Witt vectors over F_p-algebras."""
    if n < 1:
        raise ValueError("Witt length must be >= 1")
    bound = DEFAULT.max_monomials if max_monomials is None else max_monomials
    key = (p, n)
    table = _CACHE.get(key)
    if table is not None:
        if table.term_count() > bound:
            raise CostGuardExceeded(f"Witt table ({p},{n}) has {table.term_count()} monomials > {bound}")
        return table
    nvars = 2 * n
    gx = [_ghost(p, k, 0, nvars, bound) for k in range(n)]
    gy = [_ghost(p, k, n, nvars, bound) for k in range(n)]
    sums = _solve_recursion(p, n, [_padd(a, b) for a, b in zip(gx, gy)], bound)
    prods = _solve_recursion(p, n, [_pmul(a, b, bound) for a, b in zip(gx, gy)], bound)
    table = WittPolynomialTable(p, n, tuple(_reduce(s, p) for s in sums),
                                tuple(_reduce(m, p) for m in prods))
    if table.term_count() > bound:
        raise CostGuardExceeded(f"Witt table ({p},{n}) has {table.term_count()} monomials > {bound}")
    with _LOCK:
        table = _CACHE.setdefault(key, table)
    return table
