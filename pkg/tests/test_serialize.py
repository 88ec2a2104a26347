import json

import numpy as np
import pytest

from wittorders.algebra import GroupTable, group_algebra
from wittorders.coeffs import WittRing
from wittorders.errors import AssociativityViolation, SchemaError
from wittorders.fixtures import emit_fixture, m2_crossed, names, s3_a3
from wittorders.morphisms import AlgebraMorphism
from wittorders.serialize import (algebra_from_json, algebra_to_json, dumps, group_from_json,
                                  group_to_json, load, morphism_from_json, morphism_to_json,
                                  parameter_set_from_json, parameter_set_to_json, scalar_from_json,
                                  scalar_to_json)


def test_scalar_round_trip_extension():
    ring = WittRing.over(2, 2, [1, 1, 1])
    gr = ring.gr
    for u in ring.elements():
        a = gr.from_witt(u)
        doc = scalar_to_json(gr, a)
        assert len(doc) == 2 and all(len(c) == 2 for c in doc)
        assert np.array_equal(scalar_from_json(gr, doc), a)


def test_scalar_schema_errors():
    gr = WittRing.over(3, 2).gr
    assert np.array_equal(scalar_from_json(gr, 4), gr.scalar(4))
    for bad in ([1], [[1, 0], [0]], [[3], [0]], "x", True):
        with pytest.raises(SchemaError):
            scalar_from_json(gr, bad)


def test_algebra_and_group_round_trip():
    G = GroupTable.symmetric(3)
    A = group_algebra(G, WittRing.over(2, 2))
    B = algebra_from_json(json.loads(dumps(algebra_to_json(A))))
    assert np.array_equal(A.constants, B.constants)
    assert group_from_json(group_to_json(G)) == G


def test_invalid_algebra_document():
    A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 2))
    doc = algebra_to_json(A)
    doc["constants"][0][3] = [[2], [0]]
    with pytest.raises(AssociativityViolation):
        algebra_from_json(doc)
    doc = algebra_to_json(A)
    doc["constants"].append([0, 0, 9, [[1], [0]]])
    with pytest.raises(SchemaError):
        algebra_from_json(doc)
    with pytest.raises(SchemaError):
        algebra_from_json({"format": "morphism"})
    with pytest.raises(SchemaError):
        algebra_from_json(dict(algebra_to_json(A), version=7))


def test_morphism_status_is_not_trusted():
    A = group_algebra(GroupTable.cyclic(3), WittRing.over(3, 2))
    zero = AlgebraMorphism(A, np.zeros((3, 3, 1), dtype=np.int64), certified="automorphism")
    doc = morphism_to_json(zero)
    assert doc["certified"] == "automorphism"
    back = morphism_from_json(doc)
    assert back.certified == "unchecked"
    with pytest.raises(SchemaError):
        morphism_from_json(dict(doc, certified="trust me"))


@pytest.mark.parametrize("maker", [lambda: s3_a3()[0], lambda: m2_crossed()[0]])
def test_parameter_set_round_trip(maker):
    P = maker()
    doc = json.loads(dumps(parameter_set_to_json(P)))
    assert parameter_set_from_json(doc) == P
    del doc["gamma"]["1,1"]
    with pytest.raises(SchemaError):
        parameter_set_from_json(doc)


def test_fixtures_are_canonical():
    for name in names():
        text = dumps(emit_fixture(name))
        assert text == dumps(json.loads(text))
        assert text.endswith("\n")
    with pytest.raises(SchemaError):
        emit_fixture("no-such-fixture")


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load(bad)
    with pytest.raises(SchemaError):
        load(tmp_path / "missing.json")
