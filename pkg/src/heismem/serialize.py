"""Canonical JSON persistence for instances and witnesses.

All group-element coordinates, multiplicities and the right-hand constant are
rendered as decimal strings so that arbitrary-precision integers survive any
JSON consumer.  Serialization is canonical (sorted keys, no whitespace), which
makes instance hashes reproducible: serialize -> deserialize -> serialize is
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .heis import HeisElem, PowerElem
from .reduction import Generator, ReductionInstance
from .witness import Word

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Schema violation carrying a JSON-pointer-style location."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def canonical_json(doc: object) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _int_string(value: object, path: str) -> int:
    if not isinstance(value, str):
        raise SchemaError(path, f"expected a decimal string, got {type(value).__name__}")
    try:
        return int(value)
    except ValueError:
        raise SchemaError(path, f"not a decimal integer: {value!r}") from None


def _require(doc: dict, key: str, kind, path: str):
    if key not in doc:
        raise SchemaError(f"{path}/{key}", "missing field")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{path}/{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _power_to_doc(elem: PowerElem) -> dict:
    return {
        str(index): [str(part.alpha), str(part.beta), str(part.gamma)]
        for index, part in elem.components.items()
    }


def _power_from_doc(doc: object, ambient: int, path: str) -> PowerElem:
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object of components")
    comps = {}
    for key, triple in doc.items():
        try:
            index = int(key)
        except ValueError:
            raise SchemaError(f"{path}/{key}", "component index is not an integer") from None
        if not (isinstance(triple, list) and len(triple) == 3):
            raise SchemaError(f"{path}/{key}", "expected [alpha, beta, gamma]")
        alpha, beta, gamma = (_int_string(v, f"{path}/{key}/{i}") for i, v in enumerate(triple))
        if not 1 <= index <= ambient:
            raise SchemaError(f"{path}/{key}", f"component index outside [1, {ambient}]")
        comps[index] = HeisElem(alpha, beta, gamma)
    return PowerElem(ambient, comps)


def instance_to_doc(inst: ReductionInstance) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "kind": "reduction-instance",
        "n": inst.n,
        "e": inst.e,
        "d": inst.d,
        "q": inst.q,
        "upsilon": str(inst.upsilon),
        "degenerate": inst.degenerate,
        "generators": [
            {
                "name": gen.name,
                "block": gen.block_kind,
                "block_index": gen.block_index,
                "slot": gen.slot,
                "variable": gen.variable,
                "components": _power_to_doc(gen.element),
            }
            for gen in inst.generators
        ],
        "target": {"components": _power_to_doc(inst.target)},
        "layout": {
            "mul_blocks": [list(inst.mul_block_range(i)) for i in range(1, inst.e + 1)],
            "add_blocks": [list(inst.add_block_range(j)) for j in range(1, inst.d + 1)],
            "marker_components": [inst.marker_component(k) for k in range(1, inst.q + 1)],
            "const_component": inst.const_component,
        },
        "markers": {
            "equalities": [
                {"component": comp, "left": left, "right": right}
                for comp, left, right in inst.equality_markers
            ],
            "const": {"component": inst.const_component, "variable": inst.const_variable},
        },
    }


def doc_to_instance(doc: object) -> ReductionInstance:
    if not isinstance(doc, dict):
        raise SchemaError("/", "expected a JSON object")
    version = _require(doc, "version", int, "")
    if version != SCHEMA_VERSION:
        raise SchemaError("/version", f"unsupported schema version {version}")
    if _require(doc, "kind", str, "") != "reduction-instance":
        raise SchemaError("/kind", "not a reduction instance document")
    n = _require(doc, "n", int, "")
    e = _require(doc, "e", int, "")
    d = _require(doc, "d", int, "")
    q = _require(doc, "q", int, "")
    upsilon = _int_string(_require(doc, "upsilon", str, ""), "/upsilon")
    degenerate = _require(doc, "degenerate", bool, "")

    generators = []
    for position, gen_doc in enumerate(_require(doc, "generators", list, "")):
        path = f"/generators/{position}"
        if not isinstance(gen_doc, dict):
            raise SchemaError(path, "expected an object")
        name = _require(gen_doc, "name", str, path)
        block = gen_doc.get("block")
        if block is not None and block not in ("mul", "add"):
            raise SchemaError(f"{path}/block", f"unknown block kind {block!r}")
        element = _power_from_doc(_require(gen_doc, "components", dict, path), n, f"{path}/components")
        generators.append(Generator(
            name=name,
            element=element,
            block_kind=block,
            block_index=gen_doc.get("block_index"),
            slot=gen_doc.get("slot"),
            variable=gen_doc.get("variable"),
        ))

    target_doc = _require(doc, "target", dict, "")
    target = _power_from_doc(_require(target_doc, "components", dict, "/target"), n, "/target/components")

    markers = _require(doc, "markers", dict, "")
    equalities = []
    for position, marker in enumerate(_require(markers, "equalities", list, "/markers")):
        path = f"/markers/equalities/{position}"
        if not isinstance(marker, dict):
            raise SchemaError(path, "expected an object")
        equalities.append((
            _require(marker, "component", int, path),
            _require(marker, "left", int, path),
            _require(marker, "right", int, path),
        ))
    const = _require(markers, "const", dict, "/markers")

    instance = ReductionInstance(
        n=n,
        generators=tuple(generators),
        target=target,
        e=e,
        d=d,
        q=q,
        upsilon=upsilon,
        equality_markers=tuple(equalities),
        const_component=_require(const, "component", int, "/markers/const"),
        const_variable=_require(const, "variable", int, "/markers/const"),
        degenerate=degenerate,
    )
    if not degenerate and instance.generators and e + d > 0:
        if n != 8 * e + 4 * d + q + 1:
            raise SchemaError("/n", "ambient power inconsistent with e, d, q")
    return instance


def serialize_instance(inst: ReductionInstance) -> str:
    return canonical_json(instance_to_doc(inst))


def deserialize_instance(text: str) -> ReductionInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON: {exc}") from None
    return doc_to_instance(doc)


def instance_hash(inst: ReductionInstance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()


def witness_to_doc(word: Word, inst: ReductionInstance) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "kind": "witness",
        "instance_hash": instance_hash(inst),
        "word": [[position, str(multiplicity)] for position, multiplicity in word],
    }


def serialize_witness(word: Word, inst: ReductionInstance) -> str:
    return canonical_json(witness_to_doc(word, inst))


def deserialize_witness(text: str) -> tuple[Word, str]:
    """Returns the word and the instance hash it claims to belong to."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("/", "expected a JSON object")
    version = _require(doc, "version", int, "")
    if version != SCHEMA_VERSION:
        raise SchemaError("/version", f"unsupported schema version {version}")
    if _require(doc, "kind", str, "") != "witness":
        raise SchemaError("/kind", "not a witness document")
    declared = _require(doc, "instance_hash", str, "")
    steps = []
    for position, pair in enumerate(_require(doc, "word", list, "")):
        path = f"/word/{position}"
        if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int)):
            raise SchemaError(path, "expected [generator index, multiplicity string]")
        steps.append((pair[0], _int_string(pair[1], f"{path}/1")))
    return Word(tuple(steps)), declared


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a temp file and rename, so readers never see partial output."""
    path = Path(path)
    fd, temp_name = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(temp_name, path)
    except BaseException:
        os.unlink(temp_name)
        raise
