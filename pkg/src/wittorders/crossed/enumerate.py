"""Exhaustive classification of crossed products R * G at desk scale.

Every parameter set is equivalent to a normalized one (alpha_1 = id,
gamma(1, .) = gamma(., 1) = 1), so the search runs over normalized sets
only.  Two sets present weakly equivalent crossed products exactly when
one is carried to the other by an automorphism tau of R followed by an
equivalence witness r; witnesses with r(1) = 1 preserve normalization, so
classes are orbits of that combined action on the normalized stratum.
"""
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..errors import IncompleteAutList, SchemaError
from ..guards import DEFAULT
from ..morphisms import AUTOMORPHISM, AlgebraMorphism, check_o_linear, enumerate_automorphisms
from .params import ParameterSet, act_by_automorphism, transform, validate_parameter_set


def units_of(R, guards=DEFAULT):
    guards.check("max_candidates", R.gr.N ** (R.rank * R.gr.d), "elements of R")
    return [x for x in R.elements() if x.is_unit()]


@dataclass
class ClassRecord:
    representative: ParameterSet
    orbit_size: int
    members: list = field(default_factory=list)   # keys of the normalized sets in the class

    def to_json(self):
        from ..serialize import parameter_set_to_json

        return {"representative": parameter_set_to_json(self.representative),
                "orbit_size": self.orbit_size}


@dataclass
class EnumerationReport:
    classes: list
    candidates: int
    valid: int
    aut_count: int
    aut_complete: bool
    unit_count: int
    witnesses_per_orbit: int
    pairwise: list
    coverage: bool

    @property
    def count(self):
        return len(self.classes)

    def to_json(self):
        return {"classes": self.count,
                "representatives": [c.to_json() for c in self.classes],
                "candidates": self.candidates, "valid_normalized_sets": self.valid,
                "automorphisms": self.aut_count, "aut_list_complete": self.aut_complete,
                "units": self.unit_count, "witnesses_per_orbit": self.witnesses_per_orbit,
                "pairwise_inequivalence": self.pairwise,
                "exhaustive_coverage": self.coverage}


def _orbit(P, auts, witnesses):
    out = {}
    for tau in auts:
        Q = act_by_automorphism(P, tau)
        for r in witnesses:
            S = transform(Q, r)
            out.setdefault(S.key(), S)
    return out


def enumerate_crossed_products(R, G, s_action=None, aut_list=None, aut_complete=False,
                               guards=DEFAULT, order_seed=None):
    """Weak-equivalence classes of crossed products R * G, certified exhaustively.

    ``aut_list`` defaults to the exhaustively computed Aut(R).  A supplied
    list is accepted only with ``aut_complete=True``; otherwise coverage
    could not be certified and IncompleteAutList is raised.  ``s_action``
    (OLinearityData) restricts to S-linear automorphisms.
    """
    if aut_list is None:
        auts = enumerate_automorphisms(R, guards)
    else:
        if not aut_complete:
            raise IncompleteAutList("a caller-supplied automorphism list must be asserted complete")
        auts = [a if a.certified == AUTOMORPHISM else a.with_status(AUTOMORPHISM) for a in aut_list]
    if s_action is not None:
        auts = [a for a in auts if check_o_linear(a, s_action)]
    if not any(a.is_identity() for a in auts):
        raise SchemaError("automorphism list must contain the identity")
    units = units_of(R, guards)
    m = G.order
    e = G.identity
    others = [g for g in range(m) if g != e]
    pairs = [(g, h) for g in others for h in others]
    total = len(auts) ** len(others) * len(units) ** len(pairs)
    guards.check("max_candidates", total, "normalized parameter-set candidates")
    ident = AlgebraMorphism.identity(R)

    candidates = []
    for alphas in product(range(len(auts)), repeat=len(others)):
        for gams in product(range(len(units)), repeat=len(pairs)):
            candidates.append((alphas, gams))
    if order_seed is not None:
        rng = np.random.default_rng(order_seed)
        rng.shuffle(candidates)

    valid = {}
    for alphas, gams in candidates:
        alpha = [ident] * m
        for g, a in zip(others, alphas):
            alpha[g] = auts[a]
        gamma = [[R.one] * m for _ in range(m)]
        for (g, h), u in zip(pairs, gams):
            gamma[g][h] = units[u]
        P = ParameterSet(G, R, alpha, gamma)
        if validate_parameter_set(P):
            valid[P.key()] = P

    # witnesses r with r(1) = 1
    witnesses = []
    for choice in product(range(len(units)), repeat=len(others)):
        r = [R.one] * m
        for g, u in zip(others, choice):
            r[g] = units[u]
        witnesses.append(r)

    classes, assigned = [], {}
    for key in sorted(valid):
        if key in assigned:
            continue
        orbit = _orbit(valid[key], auts, witnesses)
        members = sorted(k for k in orbit if k in valid)
        if len(members) != len(orbit):
            raise AssertionError("orbit left the normalized stratum")
        rep = valid[members[0]]
        idx = len(classes)
        for k in members:
            assigned[k] = idx
        classes.append(ClassRecord(rep, len(orbit), members))

    pairwise = []
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            hit = classes[b].representative.key() in set(classes[a].members)
            pairwise.append({"pair": [a, b], "searched": len(auts) * len(witnesses),
                             "equivalent": hit})
    coverage = len(assigned) == len(valid) and (aut_list is None or aut_complete)
    return EnumerationReport(classes, len(candidates), len(valid), len(auts),
                             aut_list is None or aut_complete, len(units),
                             len(auts) * len(witnesses), pairwise, coverage)


def find_equivalence(P, Q, auts, units):
    """(tau, r) with transform(tau . P, r) == Q, searched exhaustively, or None."""
    m = P.group.order
    for tau in auts:
        A = act_by_automorphism(P, tau)
        for choice in product(range(len(units)), repeat=m):
            r = [units[c] for c in choice]
            if transform(A, r) == Q:
                return tau, r
    return None
