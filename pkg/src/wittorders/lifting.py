"""Lifting automorphisms of truncated orders by successive approximation.

Given beta, an automorphism of L/p**(2s+1) L where p**s kills the relevant
second Hochschild cohomology, each step removes the multiplicativity defect
one p-adic digit further:

    f(x, y) = a_i(xy) - a_i(x) a_i(y)             (divisible by p**(2s+i))
    g = f / p**(2s+i),   gbar = a_i**-1 o g
    p**s gbar = d1(h)                             (linear solve)
    a_{i+1} = a_i + p**(s+i) a_i o h
"""
from dataclasses import dataclass, field

import numpy as np

from .cohomology.cochains import Bimodule, Cochain2, solve_coboundary
from .errors import DepthViolation, NotAnAutomorphism, NotCoboundary, PrecisionExhausted, SchemaError
from .guards import DEFAULT
from .morphisms import (AUTOMORPHISM, AlgebraMorphism, check_automorphism, is_inner_equivalent,
                        truncate_morphism)


def depth_of_group_algebra(G, p):
    """v_p(|G|), the depth of a group algebra over an unramified coefficient ring."""
    m, v = G.order, 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def certified_precision(M):
    """Largest k <= n such that M is an automorphism modulo p**k (0 if none)."""
    n = M.source.ring.n
    best = 0
    for k in range(1, n + 1):
        if check_automorphism(truncate_morphism(M.with_status("unchecked"), k)):
            best = k
        else:
            break
    return best


@dataclass
class LiftConfig:
    s: int
    target_precision: int
    max_iterations: int = 64

    def __post_init__(self):
        if self.s < 0:
            raise SchemaError("depth parameter s must be nonnegative")
        if self.target_precision < 2 * self.s + 1:
            raise SchemaError("target precision must be at least 2s+1")
        if self.max_iterations < 0:
            raise SchemaError("max_iterations must be nonnegative")


@dataclass
class LiftStep:
    i: int
    defect_valuation: int           # valuation of f
    solve_precision: int
    h: np.ndarray                   # (r, r, d)
    before: np.ndarray
    after: np.ndarray
    certified_precision: int
    congruence: bool                # after == before mod p**(s+i)

    def to_json(self, gr):
        from .serialize import matrix_to_json

        return {"i": self.i, "defect_valuation": self.defect_valuation,
                "solve_precision": self.solve_precision, "h": matrix_to_json(gr, self.h),
                "alpha": matrix_to_json(gr, self.after),
                "certified_precision": self.certified_precision,
                "congruent_to_previous": self.congruence}


@dataclass
class LiftTrace:
    s: int
    target_precision: int
    initial: AlgebraMorphism
    steps: list = field(default_factory=list)
    final: AlgebraMorphism = None

    def morphisms(self):
        out = [self.initial.matrix]
        out.extend(st.after for st in self.steps)
        return out

    def to_json(self):
        from .serialize import matrix_to_json

        gr = self.initial.gr
        return {"s": self.s, "target_precision": self.target_precision,
                "initial": matrix_to_json(gr, self.initial.matrix),
                "steps": [st.to_json(gr) for st in self.steps],
                "final": matrix_to_json(gr, self.final.matrix) if self.final is not None else None,
                "final_certified": self.final is not None and self.final.certified == AUTOMORPHISM}


def _defect(alpha):
    """f[i, j] = alpha(l_i l_j) - alpha(l_i) alpha(l_j)."""
    gr = alpha.gr
    m = alpha.matrix
    c = alpha.source.constants
    t = gr.einsum("jt,stv->jsv", m, c)
    prod = gr.einsum("is,jsv->ijv", m, t)
    image = gr.einsum("ijw,wv->ijv", c, m)
    return (image - prod) % gr.N


def higman_lift_step(alpha, s, i):
    """One correction step; alpha must be an automorphism modulo p**(2s+i).

    Returns (alpha_next, LiftStep).  The cohomological solve runs at
    precision min(2s+i, N-s-i): the correction is scaled by p**(s+i), so
    digits of h beyond that are invisible at precision N.
    """
    A = alpha.source
    gr = A.gr
    N = A.ring.n
    k = 2 * s + i
    if k >= N:
        raise PrecisionExhausted(f"step i={i} needs precision above {k}, ambient is {N}")
    f = _defect(alpha)
    v = gr.valuation(f)
    if v < k:
        bad = np.argwhere(np.any(f % gr.p**k, axis=-1))[0]
        raise NotAnAutomorphism(f"multiplicativity defect has valuation {v} < {k}",
                                witness=tuple(int(x) for x in bad))
    if not gr.is_invertible(alpha.matrix):
        raise NotAnAutomorphism("morphism is not bijective modulo p")
    g = f // gr.p**k                                   # meaningful modulo p**(N-k)
    gbar = gr.einsum("ija,ab->ijb", g, gr.mat_inv(alpha.matrix))
    m = min(k, N - s - i)
    cochain = Cochain2(Bimodule.regular(A), gbar)
    try:
        h = solve_coboundary(cochain, s, precision=m)
    except NotCoboundary as exc:
        raise DepthViolation(f"p^{s} * gbar is not a coboundary at step i={i}; "
                             f"s is below the depth for this instance", witness=exc.witness) from None
    H = h.values % gr.N                                # canonical lift from precision m
    correction = gr.matmul(H, alpha.matrix)            # matrix of alpha o h
    new = (alpha.matrix + gr.p ** (s + i) * correction) % gr.N
    nxt = AlgebraMorphism(A, new)
    cert = certified_precision(nxt)
    if cert < k + 1:
        raise AssertionError(f"lift step i={i} reached only precision {cert} < {k + 1}")
    congruent = not np.any((new - alpha.matrix) % gr.p ** (s + i))
    step = LiftStep(i, int(v), m, H, np.array(alpha.matrix), new, cert, congruent)
    status = AUTOMORPHISM if cert == N else "unchecked"
    return nxt.with_status(status), step


def higman_lift(beta, config):
    """Lift beta (automorphism modulo p**(2s+1)) to an automorphism modulo p**target."""
    A = beta.source
    s, target = config.s, config.target_precision
    if target > A.ring.n:
        raise PrecisionExhausted(f"target precision {target} exceeds the algebra's {A.ring.n}")
    if target < A.ring.n:
        beta = truncate_morphism(beta.with_status("unchecked"), target)
        A = beta.source
    base = truncate_morphism(beta.with_status("unchecked"), 2 * s + 1)
    cert = check_automorphism(base)
    if not cert:
        raise NotAnAutomorphism(f"beta is not an automorphism modulo p^{2 * s + 1}",
                                witness=cert.witness)
    trace = LiftTrace(s, target, beta)
    alpha = beta
    i = 1
    while 2 * s + i < target:
        if len(trace.steps) >= config.max_iterations:
            raise PrecisionExhausted("iteration limit reached before the target precision")
        alpha, step = higman_lift_step(alpha, s, i)
        trace.steps.append(step)
        i += 1
    final = alpha
    if check_automorphism(final):
        final = final.with_status(AUTOMORPHISM)
    trace.final = final
    return trace


def lift_agrees(trace, beta, precision):
    """Truncation of the lift to p**precision equals that of beta."""
    N = trace.final.gr.p**precision
    return bool(np.array_equal(trace.final.matrix % N, beta.matrix % N))


@dataclass
class MarandaReport:
    full_precision: int
    probe_precision: int
    at_full: str
    at_probe: str
    consistent: bool
    flag: str = None            # "counterexample-candidate", "inconclusive" or None
    witness_full: object = None
    witness_probe: object = None

    def to_json(self):
        from .serialize import element_to_json

        def coords(u):
            return None if u is None else element_to_json(u)

        return {"full_precision": self.full_precision, "probe_precision": self.probe_precision,
                "at_full": self.at_full, "at_probe": self.at_probe,
                "consistent": self.consistent, "flag": self.flag,
                "witness_full": coords(self.witness_full),
                "witness_probe": coords(self.witness_probe)}


def maranda_probe(alpha, beta, s, guards=DEFAULT, seed=0):
    """Compare inner equivalence of alpha, beta at full precision and modulo p**s."""
    N = alpha.source.ring.n
    if not 1 <= s <= N:
        raise SchemaError(f"probe precision {s} outside 1..{N}")
    full = is_inner_equivalent(alpha, beta, guards, seed)
    ta = truncate_morphism(alpha.with_status("unchecked"), s)
    tb = truncate_morphism(beta.with_status("unchecked"), s)
    low = is_inner_equivalent(ta, tb, guards, seed)
    consistent = full.status == low.status
    flag = None
    if "inconclusive" in (full.status, low.status):
        flag = "inconclusive"
    elif low.status == "yes" and full.status == "no":
        flag = "counterexample-candidate"
    return MarandaReport(N, s, full.status, low.status, consistent, flag, full.witness, low.witness)


@dataclass
class StabilityEntry:
    index: int
    lifted: bool
    matches: bool
    steps: int
    error: str = None

    def to_json(self):
        return {"index": self.index, "lifted": self.lifted, "matches": self.matches,
                "steps": self.steps, "error": self.error}


def out_stability_check(algebra, automorphisms, s, lift_precision=None):
    """Lift each automorphism (given modulo p**t, t >= 2s+1) and compare modulo p**(s+1).

    ``algebra`` is the order at the high precision the lifts should reach.
    """
    N = algebra.ring.n if lift_precision is None else lift_precision
    high = algebra.truncate(N) if N < algebra.ring.n else algebra
    report = []
    for idx, beta in enumerate(automorphisms):
        t = beta.source.ring.n
        if t < 2 * s + 1:
            raise SchemaError(f"automorphism {idx} is known only modulo p^{t} < p^{2 * s + 1}")
        if not np.array_equal(beta.source.constants, high.constants % beta.gr.N):
            raise SchemaError(f"automorphism {idx} is not defined on a truncation of the algebra")
        start = AlgebraMorphism(high, beta.matrix)
        try:
            trace = higman_lift(start, LiftConfig(s, N))
        except (DepthViolation, NotAnAutomorphism) as exc:
            report.append(StabilityEntry(idx, False, False, 0, str(exc)))
            continue
        ok = trace.final.certified == AUTOMORPHISM
        report.append(StabilityEntry(idx, ok, lift_agrees(trace, start, s + 1), len(trace.steps)))
    return report
