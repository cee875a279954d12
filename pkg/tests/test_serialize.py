"""Canonical JSON round trips, hashing, schema rejection, atomic writes."""

import json
from pathlib import Path

import pytest

from heismem.dioph import parse_equation
from heismem.reduction import compile_instance
from heismem.serialize import (
    SchemaError,
    deserialize_instance,
    deserialize_witness,
    instance_hash,
    serialize_instance,
    serialize_witness,
    write_text_atomic,
)
from heismem.skolem import lift_solution, normalize_equation
from heismem.witness import build_witness

GOLDEN = Path(__file__).parent / "golden"


def compiled(text: str, nonneg: bool = False):
    return compile_instance(normalize_equation(parse_equation(text), nonneg=nonneg))


def test_instance_round_trip_structural_equality():
    inst = compiled("x^2 = 4")
    text = serialize_instance(inst)
    assert deserialize_instance(text) == inst


def test_serialization_is_byte_stable():
    inst = compiled("x^2 = 4")
    once = serialize_instance(inst)
    twice = serialize_instance(deserialize_instance(once))
    assert once == twice


def test_instance_golden_file():
    inst = compiled("x^2 = 4")
    assert serialize_instance(inst) == (GOLDEN / "instance_x2_4.json").read_text().rstrip("\n")


def test_degenerate_instance_round_trip():
    inst = compiled("x = 3", nonneg=True)
    assert deserialize_instance(serialize_instance(inst)) == inst


def test_tampered_coordinate_changes_hash():
    inst = compiled("x*y = 2", nonneg=True)
    doc = json.loads(serialize_instance(inst))
    component, triple = next(iter(doc["generators"][0]["components"].items()))
    triple[2] = str(int(triple[2]) + 1)  # bump a gamma coordinate
    tampered = deserialize_instance(json.dumps(doc))
    assert tampered != inst
    assert instance_hash(tampered) != instance_hash(inst)


def test_unknown_version_rejected():
    inst = compiled("x*y = 2", nonneg=True)
    doc = json.loads(serialize_instance(inst))
    doc["version"] = 2
    with pytest.raises(SchemaError):
        deserialize_instance(json.dumps(doc))


def test_schema_errors_carry_location():
    inst = compiled("x*y = 2", nonneg=True)
    doc = json.loads(serialize_instance(inst))
    doc["generators"][3]["components"]["1"] = ["1", "0"]
    with pytest.raises(SchemaError) as info:
        deserialize_instance(json.dumps(doc))
    assert "/generators/3/components/1" in str(info.value)
    with pytest.raises(SchemaError):
        deserialize_instance("not json at all")
    with pytest.raises(SchemaError):
        deserialize_instance('{"version": 1, "kind": "something-else"}')


def test_component_outside_ambient_rejected():
    inst = compiled("x*y = 2", nonneg=True)
    doc = json.loads(serialize_instance(inst))
    doc["generators"][0]["components"]["99"] = ["1", "0", "0"]
    with pytest.raises(SchemaError):
        deserialize_instance(json.dumps(doc))


def test_witness_round_trip_and_hash_binding():
    eq = parse_equation("x*y = 6")
    ns = normalize_equation(eq)
    inst = compile_instance(ns)
    word = build_witness(inst, lift_solution(eq, {"x": 2, "y": 3}, ns))
    text = serialize_witness(word, inst)
    loaded, declared = deserialize_witness(text)
    assert loaded == word
    assert declared == instance_hash(inst)


def test_witness_schema_rejection():
    with pytest.raises(SchemaError):
        deserialize_witness('{"version": 1, "kind": "witness", "instance_hash": "x", "word": [[0, 2]]}')
    with pytest.raises(SchemaError):
        deserialize_witness('{"version": 9, "kind": "witness", "instance_hash": "x", "word": []}')


def test_multiplicities_survive_as_strings():
    inst = compiled("x = 3", nonneg=True)
    big = 10**40
    from heismem.witness import Word

    word = Word(((0, big),))
    loaded, _ = deserialize_witness(serialize_witness(word, inst))
    assert loaded.steps[0][1] == big


def test_atomic_write(tmp_path):
    path = tmp_path / "out.json"
    write_text_atomic(path, "payload")
    assert path.read_text() == "payload"
    write_text_atomic(path, "replaced")
    assert path.read_text() == "replaced"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
