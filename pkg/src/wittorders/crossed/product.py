"""Crossed products as structure-constant algebras, graded maps and condensation.

The basis of R * G is lambda_i u_g at index g*r + i, with

    (lambda_i u_g)(lambda_j u_h) = lambda_i alpha_g(lambda_j) gamma(g,h) u_gh
"""
from dataclasses import dataclass

import numpy as np

from ..algebra.constructions import condense, matrix_ring
from ..algebra.core import AlgebraElement, StructureConstantAlgebra, unit_inverse
from ..errors import ConjugacyWitnessNotFound, InconclusiveSearch, NotIdempotent, RingMismatch
from ..guards import DEFAULT
from ..morphisms import (AUTOMORPHISM, AlgebraMorphism, Certificate, check_homomorphism,
                         find_unit, intertwiner_generators)
from .params import ParameterSet


class CrossedProductPresentation:
    def __init__(self, params, algebra):
        self.params = params
        self.algebra = algebra
        self.group = params.group
        self.R = params.R
        r = self.R.rank
        self.grading = [g for g in range(self.group.order) for _ in range(r)]

    def element(self, g, x):
        """x u_g for x in R."""
        if x.parent != self.R:
            raise RingMismatch("coefficient is not in R")
        r = self.R.rank
        coords = self.algebra.gr.zeros(self.algebra.rank)
        coords[g * r:(g + 1) * r] = x.coords
        return AlgebraElement(self.algebra, coords)

    def unit(self, g):
        return self.element(g, self.R.one)

    @property
    def units(self):
        return [self.unit(g) for g in range(self.group.order)]

    def component(self, x, g):
        """The R-coefficient of x in degree g."""
        r = self.R.rank
        return AlgebraElement(self.R, x.coords[g * r:(g + 1) * r])

    def is_homogeneous(self, x, g):
        r = self.R.rank
        mask = np.ones(self.algebra.rank, dtype=bool)
        mask[g * r:(g + 1) * r] = False
        return not np.any(x.coords[mask])

    def embed(self, x):
        """R -> Gamma, x -> x gamma(1,1)**-1 u_1 (a unital ring map)."""
        e = self.group.identity
        return self.element(e, x * unit_inverse(self.params.gamma[e][e]))

    @property
    def embedding(self):
        rows = [self.embed(b).coords for b in self.R.basis_elements()]
        return AlgebraMorphism(self.R, np.array(rows), self.algebra)

    def check(self):
        """Degree-1 part is R and every u_g is a homogeneous unit."""
        cert = check_homomorphism(self.embedding, unital=True)
        if not cert:
            return Certificate(False, ("embedding",) + tuple(np.atleast_1d(cert.witness)), cert.reason)
        for g, u in enumerate(self.units):
            if not u.is_unit():
                return Certificate(False, ("unit", g), f"u_{g} is not a unit")
        return Certificate(True)


def crossed_product_constants(P):
    R, G = P.R, P.group
    gr = R.gr
    r, m = R.rank, G.order
    c = R.constants
    out = gr.zeros(m * r, m * r, m * r)
    for g in range(m):
        A = P.alpha[g].matrix
        # lambda_i alpha_g(lambda_j) = sum_s A[j, s] c[i, s, v]
        prod = gr.einsum("js,isv->ijv", A, c)
        for h in range(m):
            gam = P.gamma[g][h].coords
            right = gr.einsum("t,vtw->vw", gam, c)      # lambda_v gamma
            block = gr.einsum("ijv,vw->ijw", prod, right)
            gh = G.mul(g, h)
            out[g * r:(g + 1) * r, h * r:(h + 1) * r, gh * r:(gh + 1) * r] = block
    return out


def build_crossed_product(P, validate=True):
    """Structure constants of R * G for the parameter set P."""
    R, G = P.R, P.group
    e = G.identity
    constants = crossed_product_constants(P)
    ident = R.gr.zeros(G.order * R.rank)
    r = R.rank
    ident[e * r:(e + 1) * r] = unit_inverse(P.gamma[e][e]).coords
    alg = StructureConstantAlgebra(R.ring, constants, ident, R.separable_ambient,
                                   name=f"{R.name or R.rank}*{G.name or G.order}")
    if validate:
        alg.validate()
    return CrossedProductPresentation(P, alg)


# -- graded maps -------------------------------------------------------------------


def check_graded_isomorphism(phi, grading_source, grading_target):
    """phi is a unital, bijective algebra map sending degree g into degree g."""
    if not phi.gr.is_invertible(phi.matrix):
        return Certificate(False, ("singular",), "map is not bijective")
    cert = check_homomorphism(phi, unital=True)
    if not cert:
        return cert
    tgt = np.array(grading_target)
    for i, g in enumerate(grading_source):
        row = np.any(phi.matrix[i], axis=-1)
        if np.any(row & (tgt != g)):
            return Certificate(False, ("degree", i), f"basis element {i} leaves degree {g}")
    return Certificate(True)


def equivalence_map(P, r, target):
    """Graded isomorphism Gamma(transform(P, r)) -> Gamma(P): x u'_g -> x r(g) u_g.

    ``target`` is the presentation of P; the source presentation is built here.
    """
    from .params import transform

    source = build_crossed_product(transform(P, r))
    R, rows = P.R, []
    for g in range(P.group.order):
        for b in R.basis_elements():
            rows.append(target.element(g, b * r[g]).coords)
    return AlgebraMorphism(source.algebra, np.array(rows), target.algebra), source


def action_map(P, tau, target):
    """Graded isomorphism Gamma(P) -> Gamma(tau . P): x u_g -> tau(x) v_g."""
    source = build_crossed_product(P)
    rows = []
    for g in range(P.group.order):
        for b in P.R.basis_elements():
            rows.append(target.element(g, tau(b)).coords)
    return AlgebraMorphism(source.algebra, np.array(rows), target.algebra), source


# -- condensation --------------------------------------------------------------------


@dataclass
class CondensedCrossedProduct:
    presentation: CrossedProductPresentation     # over eRe
    corner: object                               # algebra.Condensation of R at e
    units: list                                  # u'_g in Gamma
    conjugators: list                            # x_g in R with u'_g = u_g x_g**-1
    phi: AlgebraMorphism                         # Gamma' -> Gamma, image e Gamma e
    source: CrossedProductPresentation


def condense_crossed(gamma_pres, e, guards=DEFAULT, seed=0):
    """Condense R * G at an idempotent e of R.

    For each g a unit z of R with z e = alpha_g(e) z is found; then
    u'_g = z**-1 u_g commutes with e (equivalently u'_g = u_g x_g**-1 with
    x_g = alpha_g**-1(z)).  The corner e Gamma e is the crossed product of eRe
    with alpha'_g = conjugation by u'_g and gamma'(g,h) = e u'_g u'_h u'_gh**-1 e.
    """
    P, Gam = gamma_pres.params, gamma_pres.algebra
    R, G = P.R, P.group
    if e.parent != R:
        raise RingMismatch("idempotent must lie in R")
    if e * e != e:
        raise NotIdempotent("e*e != e", witness=e)
    cond = condense(R, e, guards)
    Rp = cond.algebra
    emb = gamma_pres.embed
    E = emb(e)
    units, conj = [], []
    for g in range(G.order):
        eg = P.alpha[g](e)
        if eg == e:
            z = R.one
        else:
            gens = intertwiner_generators(R, [eg], [e])
            search = find_unit(R, gens, guards, seed)
            if search.status == "inconclusive":
                raise InconclusiveSearch(f"unit search for alpha_{g}(e) was inconclusive")
            if search.status != "found":
                raise ConjugacyWitnessNotFound(f"no unit conjugates e to alpha_{g}(e)", witness=g)
            z = search.unit
        u = emb(unit_inverse(z)) * gamma_pres.unit(g)
        if u * E != E * u:
            raise AssertionError("adjusted unit does not commute with e")
        units.append(u)
        conj.append(P.alpha[g].inverse()(z))
    uinv = [unit_inverse(u) for u in units]

    def pull(x):
        """Element of eRe from a degree-1 element of e Gamma e."""
        comp = gamma_pres.component(x, G.identity)
        return cond.restrict(comp * P.gamma[G.identity][G.identity])

    alpha, gamma = [], []
    for g in range(G.order):
        images = [pull(units[g] * emb(cond.include(b)) * uinv[g]) for b in Rp.basis_elements()]
        alpha.append(AlgebraMorphism.from_images(Rp, images).with_status(AUTOMORPHISM))
    for g in range(G.order):
        row = []
        for h in range(G.order):
            x = E * units[g] * units[h] * uinv[G.mul(g, h)] * E
            row.append(pull(x))
        gamma.append(row)
    Pp = ParameterSet(G, Rp, alpha, gamma)
    new = build_crossed_product(Pp)
    rows = []
    for g in range(G.order):
        for b in Rp.basis_elements():
            rows.append((emb(cond.include(b)) * units[g] * E).coords)
    phi = AlgebraMorphism(new.algebra, np.array(rows), Gam)
    cert = check_homomorphism(phi, unital=False)
    if not cert:
        raise AssertionError(f"condensation map is not multiplicative: {cert.witness}")
    return CondensedCrossedProduct(new, cond, units, conj, phi, gamma_pres)


def matrix_grading(pres, m):
    """Grading of M_m(Gamma') induced from the grading of Gamma'."""
    return [g for _ in range(m * m) for g in pres.grading]


def decondense(cc, matrix_units):
    """M_m(Gamma') -> Gamma, E_ab (x) y -> f_a1 phi(y) f_1b.

    ``matrix_units[a][b]`` are elements f_ab of Gamma forming a system of
    matrix units with f_11 = e.  Returns (M_m(Gamma'), map, certificate).
    """
    m = len(matrix_units)
    Gp = cc.presentation.algebra
    M = matrix_ring(Gp, m)
    rows = []
    for a in range(m):
        for b in range(m):
            for y in Gp.basis_elements():
                rows.append((matrix_units[a][0] * cc.phi(y) * matrix_units[0][b]).coords)
    psi = AlgebraMorphism(M, np.array(rows), cc.source.algebra)
    cert = check_graded_isomorphism(psi, matrix_grading(cc.presentation, m), cc.source.grading)
    return M, psi, cert
