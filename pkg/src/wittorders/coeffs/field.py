"""Finite fields F_q = F_p[x]/(f) with elements encoded as integers.

An element with coefficient vector (a_0, ..., a_{deg-1}) is encoded as
``sum(a_i * p**i)``; the public :class:`FieldElement` exposes the vector.
"""
from dataclasses import dataclass
from functools import cached_property

from ..errors import NotIrreducible, RingMismatch, SchemaError

_TABLE_LIMIT = 256


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# Dense polynomials over F_p as coefficient lists, lowest degree first.

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        shift = len(a) - 1 - df
        c = a[-1] * inv_lead % p
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
        b = _trim(b)
    return a


def _ppowmod(base, e, f, p):
    result, base = [1], _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return _trim(result)


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, p):
    """Rabin's test for a monic polynomial f over F_p."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**d, f, p), x, p):
        return False
    for r in _prime_factors(d):
        h = _psub(_ppowmod(x, p ** (d // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


class FiniteField:
    """The field F_p[x]/(modulus); ``modulus`` is monic, lowest degree first."""

    def __init__(self, p, modulus=None):
        if not _is_prime(p):
            raise SchemaError(f"{p} is not prime")
        modulus = [0, 1] if modulus is None else [int(c) % p for c in modulus]
        if len(modulus) < 2 or modulus[-1] != 1:
            raise SchemaError("field modulus must be monic of degree >= 1")
        if not is_irreducible(modulus, p):
            raise NotIrreducible(f"{modulus} is reducible over F_{p}", witness=modulus)
        self.p = p
        self.modulus = tuple(modulus)
        self.deg = len(modulus) - 1
        self.q = p**self.deg

    @classmethod
    def prime(cls, p):
        return cls(p)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.deg == 1:
            return f"F_{self.p}"
        return f"F_{self.q}[{','.join(map(str, self.modulus))}]"

    # -- encoding ---------------------------------------------------------

    def encode(self, vec):
        vec = list(vec)
        if len(vec) > self.deg:
            vec = _pmod(vec, list(self.modulus), self.p)
        code = 0
        for c in reversed(vec):
            code = code * self.p + c % self.p
        return code

    def decode(self, code):
        out = []
        for _ in range(self.deg):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise RingMismatch("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p if self.deg > 1 else value % self.p)
        return FieldElement(self, self.encode(value))

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    # -- arithmetic on codes ----------------------------------------------

    def add(self, a, b):
        if self.deg == 1:
            return (a + b) % self.p
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a):
        if self.deg == 1:
            return -a % self.p
        return self.encode([-x for x in self.decode(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @cached_property
    def _mul_table(self):
        return [[self._mul_slow(a, b) for b in range(self.q)] for a in range(self.q)]

    def _mul_slow(self, a, b):
        prod = _pmul(list(self.decode(a)), list(self.decode(b)), self.p)
        return self.encode(_pmod(prod, list(self.modulus), self.p))

    def mul(self, a, b):
        if self.deg == 1:
            return a * b % self.p
        if self.q <= _TABLE_LIMIT:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def pow(self, a, e):
        if self.deg == 1:
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.deg == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def frobenius(self, a, k=1):
        return self.pow(a, self.p ** (k % self.deg if self.deg > 1 else 0)) if self.deg > 1 else a

    def frobenius_inverse(self, a, k=1):
        """The unique b with b**(p**k) == a."""
        return self.frobenius(a, (-k) % self.deg) if self.deg > 1 else a


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    code: int

    @property
    def value(self):
        return self.field.decode(self.code)

    def _check(self, other):
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise RingMismatch("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self):
        return FieldElement(self.field, self.field.frobenius(self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.deg == 1:
            return f"{self.code}"
        return f"{list(self.value)}"


def field_ops(a, b, kind):
    """Dispatch ``add``, ``mul``, ``inv`` or ``frobenius`` (``b`` ignored for the unary ones)."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "frobenius":
        return a.frobenius()
    raise ValueError(f"unknown field operation {kind!r}")
