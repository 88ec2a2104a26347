"""JSON documents for rings, algebras, groups, morphisms and parameter sets.

A scalar of W_n(F_q) is written as its Witt coordinates: a list of n
components, each the coefficient list (length deg, low degree first) of
an element of F_q.  Formats are described in docs/formats.md.
"""
import json

import numpy as np

from .algebra.core import StructureConstantAlgebra
from .algebra.groups import GroupTable
from .coeffs.witt import WittRing, WittScalar
from .errors import SchemaError
from .morphisms import UNCHECKED, AlgebraMorphism

VERSION = 1


def dumps(doc):
    """Canonical JSON text: sorted keys, compact separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _header(kind):
    return {"format": kind, "version": VERSION}


def _check_header(doc, kind):
    if not isinstance(doc, dict):
        raise SchemaError(f"{kind} document must be a JSON object")
    fmt = doc.get("format", kind)
    if fmt != kind:
        raise SchemaError(f"expected a {kind!r} document, got {fmt!r}")
    if doc.get("version", VERSION) != VERSION:
        raise SchemaError(f"unsupported {kind} format version {doc.get('version')!r}")


# -- scalars -----------------------------------------------------------------------


def scalar_to_json(gr, a):
    w = gr.to_witt(a)
    f = gr.witt.field
    return [list(f.decode(c)) for c in w.codes]


def scalar_from_json(gr, data):
    ring = gr.witt
    if isinstance(data, bool):
        raise SchemaError("scalar must be a list of Witt components")
    if isinstance(data, int):
        return gr.scalar(data)
    if not isinstance(data, list) or len(data) != ring.n:
        raise SchemaError(f"scalar must list {ring.n} Witt components")
    comps = []
    for c in data:
        if isinstance(c, int) and not isinstance(c, bool) and ring.deg == 1:
            c = [c]
        if not isinstance(c, list) or len(c) != ring.deg or not all(isinstance(t, int) for t in c):
            raise SchemaError(f"Witt component must be a list of {ring.deg} integers")
        if any(not 0 <= t < ring.p for t in c):
            raise SchemaError("Witt component coefficients must lie in [0, p)")
        comps.append(ring.field.encode(c))
    return gr.from_witt(WittScalar(ring, tuple(comps)))


def vector_to_json(gr, v):
    return [scalar_to_json(gr, x) for x in v]


def vector_from_json(gr, data, length):
    if not isinstance(data, list) or len(data) != length:
        raise SchemaError(f"expected a list of {length} scalars")
    out = gr.zeros(length)
    for i, x in enumerate(data):
        out[i] = scalar_from_json(gr, x)
    return out


def matrix_to_json(gr, m):
    return [vector_to_json(gr, row) for row in m]


def matrix_from_json(gr, data, rows, cols):
    if not isinstance(data, list) or len(data) != rows:
        raise SchemaError(f"expected a matrix with {rows} rows")
    out = gr.zeros(rows, cols)
    for i, row in enumerate(data):
        out[i] = vector_from_json(gr, row, cols)
    return out


def witt_scalar_to_json(u):
    f = u.ring.field
    return [list(f.decode(c)) for c in u.codes]


# -- rings, groups, algebras --------------------------------------------------------


def ring_to_json(ring):
    return ring.descriptor()


def ring_from_json(doc):
    if not isinstance(doc, dict):
        raise SchemaError("ring descriptor must be an object")
    return WittRing.from_descriptor(doc)


def group_to_json(G):
    doc = dict(_header("group"))
    doc.update(G.to_json())
    if G.name:
        doc["name"] = G.name
    return doc


def group_from_json(doc):
    _check_header(doc, "group")
    return GroupTable.from_json(doc)


def algebra_to_json(A):
    gr = A.gr
    entries = []
    for i, j, v in zip(*np.nonzero(np.any(A.constants, axis=-1))):
        entries.append([int(i), int(j), int(v), scalar_to_json(gr, A.constants[i, j, v])])
    doc = dict(_header("algebra"))
    doc.update({"ring": ring_to_json(A.ring), "rank": A.rank, "constants": entries,
                "identity": vector_to_json(gr, A.one.coords),
                "separable_ambient": A.separable_ambient})
    if A.name:
        doc["name"] = A.name
    return doc


def algebra_from_json(doc, validate=True):
    _check_header(doc, "algebra")
    try:
        ring = ring_from_json(doc["ring"])
        r = int(doc["rank"])
        entries = doc["constants"]
        ident_doc = doc["identity"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad algebra document: {exc}") from None
    if r < 1:
        raise SchemaError("rank must be positive")
    gr = ring.gr
    c = gr.zeros(r, r, r)
    if not isinstance(entries, list):
        raise SchemaError("constants must be a list of [i, j, v, scalar]")
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 4:
            raise SchemaError("each constant must be [i, j, v, scalar]")
        i, j, v, s = entry
        if not all(isinstance(t, int) and 0 <= t < r for t in (i, j, v)):
            raise SchemaError(f"constant index out of range: {entry[:3]}")
        c[i, j, v] = scalar_from_json(gr, s)
    ident = vector_from_json(gr, ident_doc, r)
    A = StructureConstantAlgebra(ring, c, ident, bool(doc.get("separable_ambient", False)),
                                 doc.get("name"))
    return A.validate() if validate else A


# -- morphisms and parameter sets ------------------------------------------------


def morphism_to_json(M, inline_algebra=True):
    doc = dict(_header("morphism"))
    doc["matrix"] = matrix_to_json(M.gr, M.matrix)
    doc["certified"] = M.certified
    if inline_algebra:
        doc["algebra"] = algebra_to_json(M.source)
    return doc


def morphism_from_json(doc, algebra=None):
    _check_header(doc, "morphism")
    if algebra is None:
        if "algebra" not in doc:
            raise SchemaError("morphism document needs an algebra")
        algebra = algebra_from_json(doc["algebra"])
    if "matrix" not in doc:
        raise SchemaError("morphism document needs a matrix")
    m = matrix_from_json(algebra.gr, doc["matrix"], algebra.rank, algebra.rank)
    if doc.get("certified", UNCHECKED) not in ("unchecked", "automorphism", "rejected"):
        raise SchemaError(f"unknown certification status {doc.get('certified')!r}")
    # a claimed status is never trusted on input: it is recomputed by the caller
    return AlgebraMorphism(algebra, m)


def parameter_set_to_json(P):
    gr = P.R.gr
    doc = dict(_header("parameter-set"))
    doc["group"] = group_to_json(P.group)
    doc["R"] = algebra_to_json(P.R)
    doc["alpha"] = {str(g): matrix_to_json(gr, a.matrix) for g, a in enumerate(P.alpha)}
    doc["gamma"] = {f"{g},{h}": vector_to_json(gr, P.gamma[g][h].coords)
                    for g in range(P.group.order) for h in range(P.group.order)}
    return doc


def parameter_set_from_json(doc):
    from .crossed.params import ParameterSet

    _check_header(doc, "parameter-set")
    try:
        G = group_from_json(doc["group"])
        R = algebra_from_json(doc["R"])
        alpha_doc, gamma_doc = doc["alpha"], doc["gamma"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad parameter-set document: {exc}") from None
    gr = R.gr
    m, r = G.order, R.rank
    try:
        alpha = [AlgebraMorphism(R, matrix_from_json(gr, alpha_doc[str(g)], r, r)) for g in range(m)]
        gamma = [[R.element(vector_from_json(gr, gamma_doc[f"{g},{h}"], r)) for h in range(m)]
                 for g in range(m)]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"parameter set is missing entry {exc}") from None
    return ParameterSet(G, R, alpha, gamma)


def element_to_json(x):
    return vector_to_json(x.parent.gr, x.coords)


def element_from_json(A, data):
    return A.element(vector_from_json(A.gr, data, A.rank))


def load(path):
    """Read a JSON file, mapping parse failures to SchemaError."""
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None


__all__ = ["VERSION", "dumps", "scalar_to_json", "scalar_from_json", "vector_to_json",
           "vector_from_json", "matrix_to_json", "matrix_from_json", "witt_scalar_to_json",
           "ring_to_json", "ring_from_json", "group_to_json", "group_from_json",
           "algebra_to_json", "algebra_from_json", "morphism_to_json", "morphism_from_json",
           "parameter_set_to_json", "parameter_set_from_json", "element_to_json",
           "element_from_json", "load"]
