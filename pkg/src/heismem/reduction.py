"""Compiling a normalized Skolem system into a submonoid membership instance.

Each MUL equation gets a block of 8 Heisenberg components whose generators can
multiply out to b's in components 1-6 and 8 only when the block's three
exponents satisfy z * z' = z''; each ADD equation gets a 4-component block
enforcing z + z' = z''.  One extra component per equality and one for the
constant receive central c-markers on selected generators, so the full target

    g(v) = (b's over all block targets) * c_n^|v|

lies in the generated submonoid exactly when the Skolem system has a
nonnegative solution.  The ambient power is n = 8e + 4d + q + 1 and there are
14e + 7d generators.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .heis import A, B, C, HeisElem, PowerElem, dp_from_items, h_inv, h_mul, h_pow
from .skolem import ADD, MUL, NormalizedSkolem, add_operands, mul_operands, variable_block

AC = h_mul(A, C)
A_INV = h_inv(A)
B_INV = h_inv(B)
C_INV = h_inv(C)

MUL_BLOCK_WIDTH = 8
ADD_BLOCK_WIDTH = 4

# Block gadget tables: slot name -> {local component: element}.  Template
# tuples list (slot, operand position) in evaluation order; operand position
# None means the slot appears exactly once, otherwise it is raised to the
# block equation's first/second/result exponent (0/1/2).

MUL_SLOT_ELEMENTS: dict[str, dict[int, HeisElem]] = {
    "g1": {1: AC, 7: A},
    "g2": {2: AC},
    "g3": {1: A_INV, 3: AC},
    "g4": {2: A_INV, 4: AC, 7: B},
    "f1": {1: B, 2: B},
    "f2": {3: B, 4: B},
    "g5": {3: A_INV, 5: AC, 7: A_INV},
    "g6": {4: A_INV, 6: AC},
    "f3": {5: B, 6: B},
    "g7": {5: A_INV},
    "g8": {6: A_INV, 7: B_INV},
    "g9": {7: C, 8: AC},
    "f4": {8: B},
    "g10": {8: A_INV},
}
MUL_SLOT_ORDER = ("g1", "g2", "g3", "g4", "f1", "f2", "g5", "g6", "f3", "g7", "g8", "g9", "f4", "g10")
MUL_TEMPLATE: tuple[tuple[str, int | None], ...] = (
    ("g1", 0), ("g2", 1), ("f1", None), ("g3", 0), ("g4", 1), ("f2", None),
    ("g5", 0), ("g6", 1), ("f3", None), ("g7", 0), ("g8", 1),
    ("g9", 2), ("f4", None), ("g10", 2),
)
MUL_SLOT_OPERAND = {"g1": 0, "g2": 1, "g3": 0, "g4": 1, "g5": 0, "g6": 1,
                    "g7": 0, "g8": 1, "g9": 2, "g10": 2}
MUL_MARKER_SLOTS = ("g1", "g2", "g9")
MUL_TARGET_COMPONENTS = (1, 2, 3, 4, 5, 6, 8)

ADD_SLOT_ELEMENTS: dict[str, dict[int, HeisElem]] = {
    "g1": {1: AC, 4: C},
    "g2": {2: AC, 4: C},
    "g3": {3: AC, 4: C_INV},
    "g4": {1: A_INV},
    "g5": {2: A_INV},
    "g6": {3: A_INV},
    "f1": {1: B, 2: B, 3: B},
}
ADD_SLOT_ORDER = ("g1", "g2", "g3", "g4", "g5", "g6", "f1")
ADD_TEMPLATE: tuple[tuple[str, int | None], ...] = (
    ("g1", 0), ("g2", 1), ("g3", 2), ("f1", None), ("g4", 0), ("g5", 1), ("g6", 2),
)
ADD_SLOT_OPERAND = {"g1": 0, "g2": 1, "g3": 2, "g4": 0, "g5": 1, "g6": 2}
ADD_MARKER_SLOTS = ("g1", "g2", "g3")
ADD_TARGET_COMPONENTS = (1, 2, 3)

# Chain gadget over 6 components: two exponents threaded through three b-pair
# stops.  The product equals b's in all six components for every nonnegative
# exponent pair; it is the scaffolding the 8-component gadget extends.
CHAIN_SLOT_ELEMENTS: dict[str, dict[int, HeisElem]] = {
    "g1": {1: AC},
    "g2": {2: AC},
    "g3": {1: A_INV, 3: AC},
    "g4": {2: A_INV, 4: AC},
    "f1": {1: B, 2: B},
    "f2": {3: B, 4: B},
    "g5": {3: A_INV, 5: AC},
    "g6": {4: A_INV, 6: AC},
    "f3": {5: B, 6: B},
    "g7": {5: A_INV},
    "g8": {6: A_INV},
}
CHAIN_TEMPLATE: tuple[tuple[str, int | None], ...] = (
    ("g1", 0), ("g2", 1), ("f1", None), ("g3", 0), ("g4", 1), ("f2", None),
    ("g5", 0), ("g6", 1), ("f3", None), ("g7", 0), ("g8", 1),
)
CHAIN_WIDTH = 6


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    """A submonoid generator plus the provenance needed for witness building:
    which block emitted it, in which slot, and which normalized variable's
    value its template exponent carries (None for the once-per-block f's)."""

    name: str
    element: PowerElem
    block_kind: str | None = None  # "mul" | "add" | None for ad hoc instances
    block_index: int | None = None
    slot: str | None = None
    variable: int | None = None


@dataclass(frozen=True)
class ReductionInstance:
    n: int
    generators: tuple[Generator, ...]
    target: PowerElem
    e: int = 0
    d: int = 0
    q: int = 0
    upsilon: int = 0
    # (marker component, left variable index, right variable index) per equality
    equality_markers: tuple[tuple[int, int, int], ...] = ()
    const_component: int = 0  # 0 when the instance carries no constant marker
    const_variable: int = 0
    degenerate: bool = False

    def mul_block_range(self, i: int) -> tuple[int, int]:
        if not 1 <= i <= self.e:
            raise ReductionError(f"MUL block index {i} outside [1, {self.e}]")
        return (8 * (i - 1) + 1, 8 * i)

    def add_block_range(self, j: int) -> tuple[int, int]:
        if not 1 <= j <= self.d:
            raise ReductionError(f"ADD block index {j} outside [1, {self.d}]")
        base = 8 * self.e + 4 * (j - 1)
        return (base + 1, base + 4)

    def marker_component(self, k: int) -> int:
        if not 1 <= k <= self.q:
            raise ReductionError(f"equality index {k} outside [1, {self.q}]")
        return 8 * self.e + 4 * self.d + k

    def generator_index(self, block_kind: str, block_index: int, slot: str) -> int:
        for position, gen in enumerate(self.generators):
            if (gen.block_kind, gen.block_index, gen.slot) == (block_kind, block_index, slot):
                return position
        raise ReductionError(f"no generator in {block_kind} block {block_index} slot {slot}")


def ambient_size(ns: NormalizedSkolem) -> int:
    if ns.degenerate:
        return 1
    return 8 * ns.e + 4 * ns.d + ns.q + 1


def _shift(local: dict[int, HeisElem], offset: int, ambient: int) -> PowerElem:
    return PowerElem(ambient, {offset + i: elem for i, elem in local.items()})


def mul_block_generators(i: int, ns: NormalizedSkolem) -> list[Generator]:
    """The 14 generators of the i-th MUL block, before markers."""
    if not 1 <= i <= ns.e:
        raise ReductionError(f"MUL block index {i} outside [1, {ns.e}]")
    ambient = ambient_size(ns)
    offset = 8 * (i - 1)
    operands = mul_operands(ns, i)
    out = []
    for slot in MUL_SLOT_ORDER:
        if slot.startswith("g"):
            number = 10 * (i - 1) + int(slot[1:])
            variable = operands[MUL_SLOT_OPERAND[slot]]
        else:
            number = 4 * (i - 1) + int(slot[1:])
            variable = None
        out.append(Generator(
            name=f"{slot[0]}{number}",
            element=_shift(MUL_SLOT_ELEMENTS[slot], offset, ambient),
            block_kind=MUL,
            block_index=i,
            slot=slot,
            variable=variable,
        ))
    return out


def add_block_generators(j: int, ns: NormalizedSkolem) -> list[Generator]:
    """The 7 generators of the j-th ADD block, before markers."""
    if not 1 <= j <= ns.d:
        raise ReductionError(f"ADD block index {j} outside [1, {ns.d}]")
    ambient = ambient_size(ns)
    offset = 8 * ns.e + 4 * (j - 1)
    operands = add_operands(ns, j)
    out = []
    for slot in ADD_SLOT_ORDER:
        if slot.startswith("g"):
            number = 10 * ns.e + 6 * (j - 1) + int(slot[1:])
            variable = operands[ADD_SLOT_OPERAND[slot]]
        else:
            number = 4 * ns.e + j
            variable = None
        out.append(Generator(
            name=f"{slot[0]}{number}",
            element=_shift(ADD_SLOT_ELEMENTS[slot], offset, ambient),
            block_kind=ADD,
            block_index=j,
            slot=slot,
            variable=variable,
        ))
    return out


_CARRIER_SLOT = {
    (MUL, 0): "g1",
    (MUL, 1): "g2",
    (MUL, 2): "g9",
    (ADD, 0): "g1",
    (ADD, 1): "g2",
    (ADD, 2): "g3",
}


def carrier_slot(ns: NormalizedSkolem, index: int) -> tuple[str, int, str]:
    """The canonical marker carrier of a variable: the opening generator whose
    template exponent is that variable's value."""
    kind, block, operand = variable_block(ns, index)
    return (kind, block, _CARRIER_SLOT[(kind, operand)])


def apply_markers(gens: list[Generator], ns: NormalizedSkolem) -> list[Generator]:
    """Multiply the equality and constant c-markers into the carriers.

    Equality k puts c at component 8e+4d+k on the carrier of its left variable
    and c^-1 on the carrier of its right variable; opposite signs make the
    component trivial exactly when the two exponents agree.  The constant
    marker c at component n lands on the carrier of the constant variable.
    """
    ambient = ambient_size(ns)
    position = {(g.block_kind, g.block_index, g.slot): p for p, g in enumerate(gens)}
    out = list(gens)

    def add_factor(variable: int, component: int, elem: HeisElem) -> None:
        key = carrier_slot(ns, variable)
        if key not in position:
            raise ReductionError(f"no generator carries variable z{variable}")
        p = position[key]
        gen = out[p]
        out[p] = replace(gen, element=gen.element * PowerElem(ambient, {component: elem}))

    base = 8 * ns.e + 4 * ns.d
    for k, (left, right) in enumerate(ns.equalities, 1):
        add_factor(left, base + k, C)
        add_factor(right, base + k, C_INV)
    add_factor(ns.const_var, base + ns.q + 1, C)
    return out


def target_element(ns: NormalizedSkolem) -> PowerElem:
    """g(v): b's across every block target component, c^|v| in the last one."""
    ambient = ambient_size(ns)
    if ns.degenerate:
        return PowerElem(ambient, {1: h_pow(C, ns.const_value)})
    items = []
    for i in range(1, ns.e + 1):
        offset = 8 * (i - 1)
        items.extend((offset + local, B) for local in MUL_TARGET_COMPONENTS)
    for j in range(1, ns.d + 1):
        offset = 8 * ns.e + 4 * (j - 1)
        items.extend((offset + local, B) for local in ADD_TARGET_COMPONENTS)
    items.append((ambient, h_pow(C, ns.const_value)))
    return dp_from_items(ambient, items)


def compile_instance(ns: NormalizedSkolem) -> ReductionInstance:
    """Assemble the full membership instance for a normalized system."""
    if ns.degenerate:
        return ReductionInstance(
            n=1,
            generators=(Generator(name="c1", element=PowerElem(1, {1: C})),),
            target=target_element(ns),
            upsilon=ns.upsilon,
            const_component=1,
            degenerate=True,
        )
    gens: list[Generator] = []
    for i in range(1, ns.e + 1):
        gens.extend(mul_block_generators(i, ns))
    for j in range(1, ns.d + 1):
        gens.extend(add_block_generators(j, ns))
    gens = apply_markers(gens, ns)
    n = ambient_size(ns)
    base = 8 * ns.e + 4 * ns.d
    instance = ReductionInstance(
        n=n,
        generators=tuple(gens),
        target=target_element(ns),
        e=ns.e,
        d=ns.d,
        q=ns.q,
        upsilon=ns.upsilon,
        equality_markers=tuple(
            (base + k, left, right) for k, (left, right) in enumerate(ns.equalities, 1)
        ),
        const_component=n,
        const_variable=ns.const_var,
    )
    if len(instance.generators) != 14 * ns.e + 7 * ns.d:
        raise ReductionError("generator count does not match 14e + 7d")
    if instance.n != 8 * ns.e + 4 * ns.d + ns.q + 1:
        raise ReductionError("ambient power does not match 8e + 4d + q + 1")
    return instance


def instance_from_elements(
    named: list[tuple[str, PowerElem]], target: PowerElem
) -> ReductionInstance:
    """Ad hoc instance from bare generators; used for the small single-copy and
    single-gadget membership experiments."""
    if not named:
        raise ReductionError("an instance needs at least one generator")
    ambient = named[0][1].ambient
    for name, elem in named:
        if elem.ambient != ambient:
            raise ReductionError(f"generator {name} has mismatched ambient power")
    if target.ambient != ambient:
        raise ReductionError("target has mismatched ambient power")
    return ReductionInstance(
        n=ambient,
        generators=tuple(Generator(name=name, element=elem) for name, elem in named),
        target=target,
    )


def gadget_elements(kind: str) -> dict[str, PowerElem]:
    """Standalone gadget generators in their own small power (kind: "mul",
    "add" or "chain")."""
    table, width = {
        MUL: (MUL_SLOT_ELEMENTS, MUL_BLOCK_WIDTH),
        ADD: (ADD_SLOT_ELEMENTS, ADD_BLOCK_WIDTH),
        "chain": (CHAIN_SLOT_ELEMENTS, CHAIN_WIDTH),
    }[kind]
    return {slot: PowerElem(width, dict(local)) for slot, local in table.items()}


def gadget_target(kind: str) -> PowerElem:
    comps, width = {
        MUL: (MUL_TARGET_COMPONENTS, MUL_BLOCK_WIDTH),
        ADD: (ADD_TARGET_COMPONENTS, ADD_BLOCK_WIDTH),
        "chain": (tuple(range(1, CHAIN_WIDTH + 1)), CHAIN_WIDTH),
    }[kind]
    return PowerElem(width, {i: B for i in comps})


def gadget_template(kind: str) -> tuple[tuple[str, int | None], ...]:
    return {MUL: MUL_TEMPLATE, ADD: ADD_TEMPLATE, "chain": CHAIN_TEMPLATE}[kind]


def template_value(
    elements: dict[str, PowerElem],
    template: tuple[tuple[str, int | None], ...],
    exponents: tuple[int, ...],
) -> PowerElem:
    """Evaluate a template word at the given exponents."""
    ambient = next(iter(elements.values())).ambient
    state = PowerElem(ambient)
    for slot, operand in template:
        k = 1 if operand is None else exponents[operand]
        state = state * (elements[slot] ** k)
    return state


def block_table(inst: ReductionInstance, kind: str, index: int) -> str:
    """Text grid for one compiled block: one row per component the block's
    generators touch, one column per template factor."""
    if kind == MUL:
        lo, hi = inst.mul_block_range(index)
        template = MUL_TEMPLATE
        exponent_names = {0: "z", 1: "z'", 2: "z''"}
    else:
        lo, hi = inst.add_block_range(index)
        template = ADD_TEMPLATE
        exponent_names = {0: "z", 1: "z'", 2: "z''"}
    gens = {
        g.slot: g for g in inst.generators
        if g.block_kind == kind and g.block_index == index
    }
    rows = sorted(set(range(lo, hi + 1)) | {
        comp for g in gens.values() for comp in g.element.support()
    })

    headers = ["component"]
    for slot, operand in template:
        headers.append(slot if operand is None else f"{slot}^{exponent_names[operand]}")
    headers.append("target")

    table = [headers]
    for comp in rows:
        row = [f"H({comp})"]
        for slot, operand in template:
            part = gens[slot].element.component(comp)
            if part.is_identity():
                row.append("")
            else:
                text = str(part)
                if operand is not None:
                    if " " in text or "^" in text:
                        text = f"({text})^{exponent_names[operand]}"
                    else:
                        text = f"{text}^{exponent_names[operand]}"
                row.append(text)
        row.append(str(inst.target.component(comp)))
        table.append(row)

    widths = [max(len(line[col]) for line in table) for col in range(len(headers))]
    rendered = []
    for line in table:
        rendered.append("  ".join(cell.ljust(widths[col]) for col, cell in enumerate(line)).rstrip())
    return "\n".join(rendered)
