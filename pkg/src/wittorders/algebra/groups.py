"""Finite groups given by multiplication tables."""
from itertools import permutations, product

from ..errors import InvalidGroupTable, SchemaError


class GroupTable:
    """A finite group on {0, ..., m-1}; ``mult[g][h]`` is the index of g*h."""

    def __init__(self, mult, name=None):
        try:
            self.mult = tuple(tuple(int(x) for x in row) for row in mult)
        except (TypeError, ValueError):
            raise SchemaError("group table must be a square integer matrix") from None
        m = len(self.mult)
        if m == 0 or any(len(row) != m for row in self.mult):
            raise SchemaError("group table must be square and nonempty")
        self.order = m
        self.name = name
        self._validate()

    def _validate(self):
        m, t = self.order, self.mult
        for row in t:
            if any(not 0 <= x < m for x in row):
                raise InvalidGroupTable("entry out of range")
        ids = [e for e in range(m) if all(t[e][g] == g and t[g][e] == g for g in range(m))]
        if not ids:
            raise InvalidGroupTable("no identity element")
        self.identity = ids[0]
        inverse = []
        for g in range(m):
            inv = [h for h in range(m) if t[g][h] == self.identity]
            if len(inv) != 1 or t[inv[0]][g] != self.identity:
                raise InvalidGroupTable(f"element {g} has no two-sided inverse", witness=g)
            inverse.append(inv[0])
        self.inverse = tuple(inverse)
        for g, h, k in product(range(m), repeat=3):
            if t[t[g][h]][k] != t[g][t[h][k]]:
                raise InvalidGroupTable("group law is not associative", witness=(g, h, k))

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    def __repr__(self):
        return f"GroupTable({self.name or self.order})"

    def mul(self, g, h):
        return self.mult[g][h]

    def inv(self, g):
        return self.inverse[g]

    def elements(self):
        return range(self.order)

    def is_subgroup(self, subset):
        s = set(subset)
        return self.identity in s and all(self.mult[a][self.inverse[b]] in s for a in s for b in s)

    def is_normal(self, subset):
        s = set(subset)
        return self.is_subgroup(s) and all(
            self.mult[self.mult[g][n]][self.inverse[g]] in s for g in range(self.order) for n in s)

    def to_json(self):
        return {"order": self.order, "mult": [list(r) for r in self.mult]}

    @classmethod
    def from_json(cls, doc):
        try:
            table = cls(doc["mult"], name=doc.get("name"))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad group table: {exc}") from None
        if "order" in doc and int(doc["order"]) != table.order:
            raise SchemaError("group order does not match table")
        return table

    # -- constructors -------------------------------------------------------

    @classmethod
    def cyclic(cls, m):
        return cls([[(a + b) % m for b in range(m)] for a in range(m)], name=f"C{m}")

    @classmethod
    def trivial(cls):
        return cls([[0]], name="C1")

    @classmethod
    def from_permutations(cls, perms, name=None):
        """Group table of a closed list of permutations (tuples); identity first is not required."""
        perms = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(perms)}
        # (g*h)(x) = g(h(x)): apply h first
        mult = [[index[tuple(g[h[x]] for x in range(len(g)))] for h in perms] for g in perms]
        return cls(mult, name=name)

    @classmethod
    def symmetric(cls, k):
        perms = sorted(permutations(range(k)))
        return cls.from_permutations(perms, name=f"S{k}")

    @classmethod
    def direct_product(cls, a, b):
        m = b.order
        mult = [[a.mult[g // m][h // m] * m + b.mult[g % m][h % m]
                 for h in range(a.order * m)] for g in range(a.order * m)]
        return cls(mult, name=f"{a.name}x{b.name}")

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mult[x][g]
            k += 1
        return k
