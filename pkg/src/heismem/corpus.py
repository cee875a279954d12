"""The in-repo equation corpus used by the test suite and the demos.

Each entry carries the equation text, whether it is solvable over the
integers, the enumeration box that decides that at desk scale, and the block
counts (e, d, q) its normalized Skolem system is expected to have.  The counts
are golden values regenerated by tools/regen_golden.py.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources


@dataclass(frozen=True)
class CorpusEntry:
    text: str
    solvable: bool
    box: int
    e: int
    d: int
    q: int


def corpus_entries() -> list[CorpusEntry]:
    raw = resources.files("heismem").joinpath("data/corpus.json").read_text()
    doc = json.loads(raw)
    return [CorpusEntry(**entry) for entry in doc["entries"]]


def solvable_entries() -> list[CorpusEntry]:
    return [entry for entry in corpus_entries() if entry.solvable]


def unsolvable_entries() -> list[CorpusEntry]:
    return [entry for entry in corpus_entries() if not entry.solvable]
