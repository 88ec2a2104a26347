"""Parameter sets (alpha, gamma) presenting crossed products R * G.

alpha maps G to automorphisms of R and gamma maps G x G to units of R,
subject to

    alpha_g o alpha_h = iota_{gamma(g,h)} o alpha_{gh}
    gamma(g,h) gamma(gh,k) = alpha_g(gamma(h,k)) gamma(g,hk)
"""
import numpy as np

from ..algebra.core import AlgebraElement, unit_inverse
from ..algebra.constructions import group_algebra
from ..errors import NotAUnit, NotNormal, RingMismatch, SchemaError
from ..morphisms import (AUTOMORPHISM, AlgebraMorphism, Certificate, check_automorphism,
                         check_o_linear, compose, inner_from_unit)


class ParameterSet:
    def __init__(self, group, R, alpha, gamma):
        self.group = group
        self.R = R
        m = group.order
        alpha = list(alpha)
        if len(alpha) != m:
            raise SchemaError(f"alpha needs {m} entries, got {len(alpha)}")
        if len(gamma) != m or any(len(row) != m for row in gamma):
            raise SchemaError(f"gamma must be a {m} x {m} table")
        for a in alpha:
            if a.source != R or a.target != R:
                raise RingMismatch("alpha entries must be endomorphisms of R")
        for row in gamma:
            for x in row:
                if x.parent != R:
                    raise RingMismatch("gamma values must lie in R")
        self.alpha = tuple(alpha)
        self.gamma = tuple(tuple(row) for row in gamma)

    @classmethod
    def trivial(cls, group, R):
        ident = AlgebraMorphism.identity(R)
        m = group.order
        return cls(group, R, [ident] * m, [[R.one] * m for _ in range(m)])

    def key(self):
        """A tuple of integers ordering parameter sets lexicographically."""
        a = np.array([x.matrix for x in self.alpha]).reshape(-1)
        g = np.array([[x.coords for x in row] for row in self.gamma]).reshape(-1)
        return tuple(int(v) for v in np.concatenate([a, g]))

    def __eq__(self, other):
        return (isinstance(other, ParameterSet) and self.group == other.group
                and self.R == other.R and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ParameterSet({self.group!r}, {self.R!r})"

    def is_normalized(self):
        e = self.group.identity
        one = self.R.one
        return (self.alpha[e].is_identity()
                and all(self.gamma[e][k] == one and self.gamma[k][e] == one
                        for k in range(self.group.order)))

    def with_alpha_statuses(self):
        """Copy with every alpha entry certified (raises nothing; rejected entries marked)."""
        out = []
        for a in self.alpha:
            ok = check_automorphism(a)
            out.append(a.with_status(AUTOMORPHISM if ok else "rejected"))
        return ParameterSet(self.group, self.R, out, self.gamma)


def validate_parameter_set(P):
    """Certificate for the two identities; witness ("alpha", g), ("gamma", g, h), (g, h) or (g, h, k)."""
    G, R = P.group, P.R
    m = G.order
    for g, a in enumerate(P.alpha):
        if not check_automorphism(a):
            return Certificate(False, ("alpha", g), f"alpha_{g} is not an automorphism")
    for g in range(m):
        for h in range(m):
            if not P.gamma[g][h].is_unit():
                return Certificate(False, ("gamma", g, h), f"gamma({g},{h}) is not a unit")
    for g in range(m):
        for h in range(m):
            lhs = compose(P.alpha[g], P.alpha[h])
            rhs = compose(inner_from_unit(P.gamma[g][h]), P.alpha[G.mul(g, h)])
            if not np.array_equal(lhs.matrix, rhs.matrix):
                return Certificate(False, (g, h), "alpha_g alpha_h != iota_gamma(g,h) alpha_gh")
    for g in range(m):
        for h in range(m):
            gh = G.mul(g, h)
            for k in range(m):
                lhs = P.gamma[g][h] * P.gamma[gh][k]
                rhs = P.alpha[g](P.gamma[h][k]) * P.gamma[g][G.mul(h, k)]
                if lhs != rhs:
                    return Certificate(False, (g, h, k), "gamma twisted cocycle identity fails")
    return Certificate(True)


def transform(P, r):
    """alpha'_g = iota_{r(g)} o alpha_g, gamma'(g,h) = r(g) alpha_g(r(h)) gamma(g,h) r(gh)**-1."""
    G = P.group
    r = list(r)
    if len(r) != G.order:
        raise SchemaError("equivalence witness needs one unit per group element")
    try:
        rinv = [unit_inverse(x) for x in r]
    except NotAUnit as exc:
        raise NotAUnit("equivalence witness contains a non-unit", witness=exc.witness) from None
    alpha = [compose(inner_from_unit(r[g]), P.alpha[g]) for g in range(G.order)]
    gamma = [[r[g] * P.alpha[g](r[h]) * P.gamma[g][h] * rinv[G.mul(g, h)]
              for h in range(G.order)] for g in range(G.order)]
    return ParameterSet(G, P.R, alpha, gamma)


def inverse_witness(r):
    """The witness undoing ``transform(., r)``."""
    return [unit_inverse(x) for x in r]


def normalize(P):
    """Equivalent set with gamma(1,1) = 1 (hence alpha_1 = id and gamma(1,k) = gamma(g,1) = 1).

    Returns (normalized set, witness r with r(g) = gamma(1,1)**-1).
    """
    e = P.group.identity
    c = unit_inverse(P.gamma[e][e])
    w = [c] * P.group.order
    return transform(P, w), w


def act_by_automorphism(P, tau):
    """(tau . alpha)_g = tau alpha_g tau**-1, (tau . gamma) = tau o gamma."""
    tinv = tau.inverse()
    alpha = [compose(compose(tau, a), tinv) for a in P.alpha]
    gamma = [[tau(x) for x in row] for row in P.gamma]
    return ParameterSet(P.group, P.R, alpha, gamma)


def s_linear_check(P, data):
    """Every alpha_g commutes with the S-action; witness is (g, generator, s, v)."""
    for g, a in enumerate(P.alpha):
        cert = check_o_linear(a, data)
        if not cert:
            return Certificate(False, (g,) + tuple(cert.witness), f"alpha_{g} twists the S-action")
    return Certificate(True)


class CosetData:
    """Quotient G/N with representatives and the ring[N] basis order."""

    def __init__(self, G, N):
        self.G = G
        self.N = sorted(set(N))
        if not G.is_normal(self.N):
            raise NotNormal("subgroup is not normal", witness=self.N)
        reps, seen = [G.identity], set(self.N)
        coset_of = {n: 0 for n in self.N}
        for g in range(G.order):
            if g in seen:
                continue
            idx = len(reps)
            reps.append(g)
            for n in self.N:
                x = G.mul(g, n)
                seen.add(x)
                coset_of[x] = idx
        self.reps = reps
        self.coset_of = coset_of
        from ..algebra.groups import GroupTable

        mult = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
        self.quotient = GroupTable(mult, name=f"{G.name or G.order}/{len(self.N)}")
        self.subgroup = GroupTable(
            [[self.N.index(G.mul(a, b)) for b in self.N] for a in self.N],
            name=f"N{len(self.N)}")


def group_algebra_parameter_set(G, N, ring):
    """Parameter set over R = ring[N] for the quotient G/N, from coset representatives.

    alpha_x(a) = [x] a [x]**-1 and gamma(x, y) = [x][y][xy]**-1.  Returns
    (ParameterSet, CosetData).
    """
    data = CosetData(G, N)
    R = group_algebra(data.subgroup, ring)
    Nl = data.N
    X = data.quotient
    alpha, gamma = [], []
    for x, rx in enumerate(data.reps):
        rinv = G.inv(rx)
        images = [R.basis(Nl.index(G.mul(G.mul(rx, n), rinv))) for n in Nl]
        alpha.append(AlgebraMorphism.from_images(R, images).with_status(AUTOMORPHISM))
    for x, rx in enumerate(data.reps):
        row = []
        for y, ry in enumerate(data.reps):
            rxy = data.reps[X.mul(x, y)]
            n = G.mul(G.mul(rx, ry), G.inv(rxy))
            row.append(R.basis(Nl.index(n)))
        gamma.append(row)
    return ParameterSet(X, R, alpha, gamma), data


def group_basis_map(data, ring):
    """Permutation matrix sending lambda_n u_x (index x*|N| + j) to the group element n_j [x]."""
    G = data.G
    k = len(data.N)
    rows = np.zeros((G.order, G.order), dtype=np.int64)
    for x, rx in enumerate(data.reps):
        for j, n in enumerate(data.N):
            rows[x * k + j, G.mul(n, rx)] = 1
    return rows
