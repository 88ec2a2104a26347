"""Truncated Witt vectors W_n(F_q) with arithmetic by the universal polynomials."""
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from ..errors import NotAUnit, RingMismatch, SchemaError
from .field import FieldElement, FiniteField
from .polys import gen_witt_polys


def _compile(terms):
    return [(c, [(v, e) for v, e in enumerate(exps) if e]) for c, exps in terms]


class WittRing:
    """W_n(k) for a finite field k, the ring descriptor used throughout."""

    def __init__(self, field, n):
        if not isinstance(field, FiniteField):
            raise SchemaError("WittRing needs a FiniteField")
        if n < 1:
            raise SchemaError("Witt length must be >= 1")
        self.field = field
        self.n = n
        self.p = field.p
        self.deg = field.deg

    @classmethod
    def over(cls, p, n, modulus=None):
        return cls(FiniteField(p, modulus), n)

    def __eq__(self, other):
        return isinstance(other, WittRing) and (self.field, self.n) == (other.field, other.n)

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"W_{self.n}({self.field!r})"

    def descriptor(self):
        return {"p": self.p, "deg": self.deg, "modulus": list(self.field.modulus), "n": self.n}

    @classmethod
    def from_descriptor(cls, d):
        try:
            ring = cls.over(int(d["p"]), int(d["n"]), [int(c) for c in d["modulus"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad ring descriptor: {exc}") from None
        if "deg" in d and int(d["deg"]) != ring.deg:
            raise SchemaError("ring descriptor deg does not match modulus")
        return ring

    def truncate(self, m):
        if not 1 <= m <= self.n:
            raise SchemaError(f"cannot truncate W_{self.n} to length {m}")
        return WittRing(self.field, m)

    @cached_property
    def table(self):
        return gen_witt_polys(self.p, self.n)

    @cached_property
    def _sigma(self):
        return [_compile(t) for t in self.table.sigma]

    @cached_property
    def _mu(self):
        return [_compile(t) for t in self.table.mu]

    @cached_property
    def gr(self):
        from .galois import GaloisRing

        return GaloisRing(self)

    # -- element construction ---------------------------------------------

    def __call__(self, components):
        if isinstance(components, WittScalar):
            if components.ring != self:
                raise RingMismatch("scalar belongs to another Witt ring")
            return components
        comps = list(components)
        if len(comps) != self.n:
            raise SchemaError(f"expected {self.n} Witt components, got {len(comps)}")
        return WittScalar(self, tuple(self.field(c).code for c in comps))

    @property
    def zero(self):
        return WittScalar(self, (0,) * self.n)

    @property
    def one(self):
        return WittScalar(self, (1,) + (0,) * (self.n - 1))

    def elements(self):
        for codes in product(range(self.field.q), repeat=self.n):
            yield WittScalar(self, codes)

    def from_int(self, k):
        """The image of the integer k (k * 1)."""
        if self.deg == 1:
            return padic_inverse(k, self)
        return self.gr.to_witt(self.gr.scalar(k))

    # -- polynomial evaluation on codes -------------------------------------

    def _eval(self, compiled, values):
        f = self.field
        if f.deg == 1:
            p = self.p
            acc = 0
            for coef, mono in compiled:
                t = coef
                for v, e in mono:
                    t = t * pow(values[v], e, p) % p
                    if not t:
                        break
                acc += t
            return acc % p
        acc = 0
        for coef, mono in compiled:
            t = coef
            for v, e in mono:
                if not t:
                    break
                t = f.mul(t, f.pow(values[v], e))
            acc = f.add(acc, t)
        return acc

    def _add(self, a, b):
        values = list(a) + list(b)
        return tuple(self._eval(s, values) for s in self._sigma)

    def _mul(self, a, b):
        values = list(a) + list(b)
        return tuple(self._eval(m, values) for m in self._mu)

    def _neg(self, a):
        # sigma_i = X_i + Y_i + (terms in lower indices), so solve coordinatewise.
        f = self.field
        v = [0] * self.n
        for i in range(self.n):
            values = list(a) + v
            v[i] = f.neg(self._eval(self._sigma[i], values))
        return tuple(v)


@dataclass(frozen=True)
class WittScalar:
    ring: WittRing
    codes: tuple

    def __post_init__(self):
        if len(self.codes) != self.ring.n:
            raise SchemaError("Witt component count does not match the ring")

    @property
    def components(self):
        return tuple(FieldElement(self.ring.field, c) for c in self.codes)

    def _other(self, other):
        if isinstance(other, int):
            return self.ring.from_int(other)
        if not isinstance(other, WittScalar) or other.ring != self.ring:
            raise RingMismatch("Witt ring mismatch")
        return other

    def __add__(self, other):
        return witt_add(self, self._other(other))

    __radd__ = __add__

    def __mul__(self, other):
        return witt_mul(self, self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return WittScalar(self.ring, self.ring._neg(self.codes))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __pow__(self, e):
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_unit(self):
        return self.codes[0] != 0

    def inverse(self):
        return witt_inv(self)

    def __repr__(self):
        return f"W{tuple(self.components)}"


def witt_add(u, v):
    if u.ring != v.ring:
        raise RingMismatch("Witt ring mismatch")
    return WittScalar(u.ring, u.ring._add(u.codes, v.codes))


def witt_mul(u, v):
    if u.ring != v.ring:
        raise RingMismatch("Witt ring mismatch")
    return WittScalar(u.ring, u.ring._mul(u.codes, v.codes))


def teichmuller(a, n):
    """The multiplicative lift (a, 0, ..., 0) in W_n."""
    if not isinstance(a, FieldElement):
        raise SchemaError("teichmuller expects a FieldElement")
    return WittScalar(WittRing(a.field, n), (a.code,) + (0,) * (n - 1))


def witt_inv(u):
    """Inverse via tau(x0^-1) * sum_{i<n} (1 - tau(x0^-1) * x)^i."""
    if u.codes[0] == 0:
        raise NotAUnit("Witt vector with vanishing first component is not a unit", witness=u)
    ring = u.ring
    t = teichmuller(FieldElement(ring.field, ring.field.inv(u.codes[0])), ring.n)
    y = ring.one - t * u
    total, power = ring.zero, ring.one
    for _ in range(ring.n):
        total = total + power
        power = power * y
    return t * total


def padic_oracle(u):
    """sum_i p**i * t(u_i) mod p**n, with t the Teichmuller lift in Z/p**n."""
    ring = u.ring
    if ring.deg != 1:
        raise SchemaError("padic_oracle requires a prime base field")
    p, n = ring.p, ring.n
    mod = p**n
    return sum(p**i * pow(c, p ** (n - 1), mod) for i, c in enumerate(u.codes)) % mod


def padic_inverse(x, ring):
    """Inverse of :func:`padic_oracle`: Teichmuller digit expansion of x mod p**n."""
    if ring.deg != 1:
        raise SchemaError("padic_inverse requires a prime base field")
    p, n = ring.p, ring.n
    mod = p**n
    x %= mod
    codes = []
    for i in range(n):
        c = x % p
        codes.append(c)
        x = (x - pow(c, p ** (n - 1), mod)) % mod
        x //= p
    return WittScalar(ring, tuple(codes))
