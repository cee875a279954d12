"""Membership witnesses: words over the instance generators.

A witness is stored run-length encoded as (generator index, multiplicity)
pairs, which keeps the highly repetitive template words readable and leaves
the template shape auditable.  ``build_witness`` instantiates the block
templates from a Skolem assignment; ``bounded_membership_search`` is an
independent breadth-first oracle (membership is undecidable in general, so
absence is conclusive only within the stated length and coordinate bounds).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Mapping

from .dioph import DiophEquation, brute_solve, nonnegativize, parse_equation, render_equation
from .heis import PowerElem, dp_pow, render_elem
from .reduction import (
    ADD_TEMPLATE,
    MUL_TEMPLATE,
    ReductionInstance,
    compile_instance,
)
from .skolem import (
    ADD,
    MUL,
    NormalizedSkolem,
    SkolemAssignment,
    add_operands,
    lift_solution,
    mul_operands,
    normalize,
    skolemize,
)

DEFAULT_STATE_CAP = 10**7
STATE_CAP_ENV = "HEISMEM_STATE_CAP"


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """Run-length encoded word; multiplicities may be zero so that template
    instantiations keep every slot visible."""

    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(m < 0 for _, m in self.steps):
            raise WitnessError("multiplicities must be nonnegative")

    @property
    def length(self) -> int:
        return sum(m for _, m in self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class Discrepancy:
    component: int
    got: object  # HeisElem
    want: object
    provenance: str


@dataclass(frozen=True)
class DiscrepancyReport:
    entries: tuple[Discrepancy, ...]

    @property
    def ok(self) -> bool:
        return not self.entries

    def render(self) -> str:
        if self.ok:
            return "witness verifies: evaluated word equals the target"
        lines = [f"{'component':<10}  {'got':<16}  {'want':<16}  provenance"]
        for entry in self.entries:
            lines.append(
                f"{entry.component:<10}  {render_elem(entry.got):<16}  "
                f"{render_elem(entry.want):<16}  {entry.provenance}"
            )
        return "\n".join(lines)


def component_provenance(inst: ReductionInstance, component: int) -> str:
    """Human label for a component: its block copy, equality marker P_k, or
    the constant slot."""
    for i in range(1, inst.e + 1):
        lo, hi = inst.mul_block_range(i)
        if lo <= component <= hi:
            return f"mul block {i}, copy {component - lo + 1}"
    for j in range(1, inst.d + 1):
        lo, hi = inst.add_block_range(j)
        if lo <= component <= hi:
            return f"add block {j}, copy {component - lo + 1}"
    base = 8 * inst.e + 4 * inst.d
    if base < component <= base + inst.q:
        k = component - base
        return f"equality marker P{inst.e + inst.d + k}"
    if component == inst.const_component and inst.const_component:
        return "constant marker"
    return f"component {component}"


def block_witness(
    inst: ReductionInstance, kind: str, index: int, s: Mapping[int, int]
) -> Word:
    """Template word of one block, with exponents drawn from the assignment."""
    if kind == MUL:
        template = MUL_TEMPLATE
        operands = mul_operands(_layout(inst), index)
    else:
        template = ADD_TEMPLATE
        operands = add_operands(_layout(inst), index)
    steps = []
    for slot, operand in template:
        position = inst.generator_index(kind, index, slot)
        if operand is None:
            steps.append((position, 1))
        else:
            variable = operands[operand]
            if variable not in s:
                raise WitnessError(f"assignment missing variable z{variable}")
            value = s[variable]
            if value < 0:
                raise WitnessError(f"negative exponent for z{variable}")
            steps.append((position, value))
    return Word(tuple(steps))


class _LayoutView:
    """Just enough of a NormalizedSkolem to reuse the operand arithmetic."""

    def __init__(self, e: int, d: int):
        self.e = e
        self.d = d


def _layout(inst: ReductionInstance):
    return _LayoutView(inst.e, inst.d)


def build_witness(inst: ReductionInstance, s: SkolemAssignment) -> Word:
    """Concatenate the block templates (MUL blocks in order, then ADD blocks)."""
    if inst.degenerate:
        return Word(((0, abs(inst.upsilon)),))
    steps: list[tuple[int, int]] = []
    for i in range(1, inst.e + 1):
        steps.extend(block_witness(inst, MUL, i, s))
    for j in range(1, inst.d + 1):
        steps.extend(block_witness(inst, ADD, j, s))
    return Word(tuple(steps))


def evaluate_word(inst: ReductionInstance, word: Word) -> PowerElem:
    """Left-to-right product of generator powers; the empty word evaluates to
    the identity."""
    state = PowerElem(inst.n)
    for position, multiplicity in word:
        if not 0 <= position < len(inst.generators):
            raise WitnessError(f"generator index {position} out of range")
        if multiplicity:
            state = state * dp_pow(inst.generators[position].element, multiplicity)
    return state


def verify_witness(inst: ReductionInstance, word: Word) -> DiscrepancyReport:
    """Empty report iff the word evaluates to the instance target; otherwise
    one entry per differing component, labelled with its provenance."""
    value = evaluate_word(inst, word)
    entries = []
    for component in sorted(set(value.support()) | set(inst.target.support())):
        got = value.component(component)
        want = inst.target.component(component)
        if got != want:
            entries.append(Discrepancy(component, got, want, component_provenance(inst, component)))
    return DiscrepancyReport(tuple(entries))


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "not_found" | "inconclusive"
    word: Word | None
    max_len: int
    coord_bound: int
    states_explored: int
    all_shortest: tuple[Word, ...] = ()

    @property
    def found(self) -> bool:
        return self.status == "found"


def _rle(sequence: tuple[int, ...]) -> Word:
    steps: list[tuple[int, int]] = []
    for index in sequence:
        if steps and steps[-1][0] == index:
            steps[-1] = (index, steps[-1][1] + 1)
        else:
            steps.append((index, 1))
    return Word(tuple(steps))


def default_coord_bound(inst: ReductionInstance, max_len: int) -> int:
    def magnitude(elem: PowerElem) -> int:
        return max(
            (max(abs(e.alpha), abs(e.beta), abs(e.gamma)) for _, e in elem.components.items()),
            default=0,
        )

    generator_max = max((magnitude(g.element) for g in inst.generators), default=1)
    return magnitude(inst.target) + max_len * max(generator_max, 1)


def bounded_membership_search(
    inst: ReductionInstance,
    max_len: int,
    coord_bound: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
    all_shortest: bool = False,
) -> SearchResult:
    """Level-synchronous BFS over products of generators.

    States are deduplicated by their canonical coordinates and pruned when any
    coordinate magnitude exceeds ``coord_bound``.  Returns a shortest witness
    (lexicographically least among shortest, by generator index) or reports
    not_found; exceeding ``state_cap`` yields status "inconclusive", which is
    distinct from a conclusive not_found within the bounds.
    """
    if max_len < 0:
        raise WitnessError("max_len must be nonnegative")
    if coord_bound is None:
        coord_bound = default_coord_bound(inst, max_len)
    env_cap = os.environ.get(STATE_CAP_ENV)
    if env_cap is not None:
        state_cap = int(env_cap)

    identity = PowerElem(inst.n)
    if inst.target == identity:
        return SearchResult("found", Word(()), max_len, coord_bound, 1, (Word(()),))

    def within_bound(state: PowerElem) -> bool:
        for _, elem in state.components.items():
            if max(abs(elem.alpha), abs(elem.beta), abs(elem.gamma)) > coord_bound:
                return False
        return True

    visited = {identity.key()}
    frontier: list[tuple[PowerElem, tuple[int, ...]]] = [(identity, ())]
    hits: list[tuple[int, ...]] = []

    for _ in range(max_len):
        next_frontier: list[tuple[PowerElem, tuple[int, ...]]] = []
        for state, path in frontier:
            for position, gen in enumerate(inst.generators):
                successor = state * gen.element
                word = path + (position,)
                if successor == inst.target:
                    hits.append(word)
                    if not all_shortest:
                        return SearchResult(
                            "found", _rle(word), max_len, coord_bound, len(visited)
                        )
                key = successor.key()
                if key in visited or not within_bound(successor):
                    continue
                if len(visited) >= state_cap:
                    return SearchResult("inconclusive", None, max_len, coord_bound, len(visited))
                visited.add(key)
                next_frontier.append((successor, word))
        if hits:
            words = tuple(_rle(w) for w in sorted(hits))
            return SearchResult("found", words[0], max_len, coord_bound, len(visited), words)
        frontier = next_frontier
        if not frontier:
            break
    return SearchResult("not_found", None, max_len, coord_bound, len(visited))


@dataclass
class RoundtripReport:
    """Everything the end-to-end check learned about one equation."""

    equation: str
    upsilon: int
    e: int
    d: int
    q: int
    n: int
    generator_count: int
    box: int
    solvable_in_box: bool
    assignment: dict[str, int] | None = None
    skolem_assignment: SkolemAssignment | None = None
    witness: Word | None = None
    verified: bool | None = None
    discrepancies: DiscrepancyReport | None = None
    search: SearchResult | None = None
    status: str = ""
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("member", "no-solution-in-box", "no-solution-consistent",
                               "witness-beyond-box")

    def render(self) -> str:
        lines = [
            f"equation:    {self.equation}",
            f"layout:      e={self.e} d={self.d} q={self.q} n={self.n} "
            f"generators={self.generator_count}",
            f"box search:  {'solution ' + str(self.assignment) if self.solvable_in_box else f'no solution with |values| <= {self.box}'}",
        ]
        if self.witness is not None:
            lines.append(f"witness:     {len(self.witness.steps)} slots, length {self.witness.length}")
        if self.verified is not None:
            lines.append(f"verified:    {self.verified}")
        if self.search is not None:
            lines.append(
                f"search:      {self.search.status} (max_len={self.search.max_len}, "
                f"states={self.search.states_explored})"
            )
        lines.append(f"status:      {self.status}")
        timing = ", ".join(f"{k}={v * 1000:.1f}ms" for k, v in self.timings.items())
        lines.append(f"timings:     {timing}")
        return "\n".join(lines)


def reduction_roundtrip(
    text: str,
    box: int,
    search_len: int | None = None,
    coord_bound: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> RoundtripReport:
    """Run the full pipeline on an equation given as text.

    If box enumeration finds an integer solution, it is lifted through the
    Skolem system, turned into a witness word, and verified against the
    target.  Otherwise, when ``search_len`` is given, the bounded membership
    search must come back empty; a witness found anyway means the box was too
    small (the equation is solvable beyond it), which is reported, not hidden.
    """
    timings: dict[str, float] = {}

    def staged(stage: str, fn, *args, **kwargs):
        start = time.perf_counter()
        try:
            result = fn(*args, **kwargs)
        except Exception as exc:
            raise WitnessError(f"stage {stage!r} failed: {exc}") from exc
        timings[stage] = time.perf_counter() - start
        return result

    eq = staged("parse", parse_equation, text)
    nonneg = staged("nonnegativize", nonnegativize, eq)
    ns = staged("normalize", lambda: normalize(skolemize(nonneg)))
    inst = staged("compile", compile_instance, ns)
    assignment = staged("solve", brute_solve, eq, box)

    report = RoundtripReport(
        equation=render_equation(eq),
        upsilon=eq.rhs,
        e=ns.e,
        d=ns.d,
        q=ns.q,
        n=inst.n,
        generator_count=len(inst.generators),
        box=box,
        solvable_in_box=assignment is not None,
        timings=timings,
    )

    if assignment is not None:
        report.assignment = assignment
        report.skolem_assignment = staged("lift", lift_solution, eq, assignment, ns)
        report.witness = staged("witness", build_witness, inst, report.skolem_assignment)
        report.discrepancies = staged("verify", verify_witness, inst, report.witness)
        report.verified = report.discrepancies.ok
        report.status = "member" if report.verified else "verification-failed"
        return report

    if search_len is None:
        report.status = "no-solution-in-box"
        return report

    result = staged(
        "search", bounded_membership_search, inst, search_len, coord_bound, state_cap
    )
    report.search = result
    if result.status == "not_found":
        report.status = "no-solution-consistent"
    elif result.status == "found":
        report.witness = result.word
        report.status = "witness-beyond-box"
    else:
        report.status = "inconclusive"
    return report
