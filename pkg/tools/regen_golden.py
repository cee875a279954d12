#!/usr/bin/env python3
"""Regenerate the equation corpus annotations and the golden test files.

Run from the repository root after any deliberate change to the pipeline's
canonical ordering, naming, or serialization:

    python tools/regen_golden.py

The outputs are committed; tests compare against them byte for byte.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from heismem.dioph import parse_equation  # noqa: E402
from heismem.reduction import ADD, MUL, block_table, compile_instance  # noqa: E402
from heismem.serialize import serialize_instance, write_text_atomic  # noqa: E402
from heismem.skolem import normalize_equation, render_normalized  # noqa: E402

# (text, solvable over the integers, enumeration box that decides it)
CORPUS = [
    ("x + y = 3", True, 5),
    ("x*y = 6", True, 5),
    ("x^2 = 4", True, 5),
    ("x^2 + y^2 = 5", True, 5),
    ("x*y - z = 0", True, 5),
    ("x^2 = 2", False, 5),
    ("x^2 = -1", False, 5),
    ("2*x = 1", False, 5),
]


def main() -> None:
    entries = []
    for text, solvable, box in CORPUS:
        ns = normalize_equation(parse_equation(text))
        entries.append({
            "text": text,
            "solvable": solvable,
            "box": box,
            "e": ns.e,
            "d": ns.d,
            "q": ns.q,
        })
        print(f"{text:16s} e={ns.e} d={ns.d} q={ns.q}")

    corpus_path = ROOT / "src" / "heismem" / "data" / "corpus.json"
    write_text_atomic(corpus_path, json.dumps({"version": 1, "entries": entries}, indent=2) + "\n")
    print(f"wrote {corpus_path}")

    golden = ROOT / "tests" / "golden"
    golden.mkdir(parents=True, exist_ok=True)

    ns = normalize_equation(parse_equation("x^2 = 4"))
    write_text_atomic(golden / "skolem_x2_4.txt", render_normalized(ns) + "\n")

    inst = compile_instance(ns)
    write_text_atomic(golden / "instance_x2_4.json", serialize_instance(inst) + "\n")
    write_text_atomic(golden / "table_x2_4_mul1.txt", block_table(inst, MUL, 1) + "\n")
    write_text_atomic(golden / "table_x2_4_add1.txt", block_table(inst, ADD, 1) + "\n")
    print(f"wrote golden files under {golden}")


if __name__ == "__main__":
    main()
