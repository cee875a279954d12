"""Rewriting a nonnegative polynomial equation as an ordered Skolem system.

A Skolem system has four equation shapes over nonnegative integers:

    z * z' = z''      (MUL)
    z + z' = z''      (ADD)
    z = z'            (EQ)
    z = value         (CONST, value >= 0)

``skolemize`` produces such a system whose nonnegative solutions are exactly
the extensions of the input equation's nonnegative solutions.  ``normalize``
then copies duplicated variables apart and renumbers so that the m-th MUL
equation uses exactly the indices (3(m-1)+1, 3(m-1)+2, 3m) and the ADD block
follows, every index occurring in exactly one operand slot; the copies are tied
back together by an equality subsystem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .dioph import Assignment, DiophEquation, eval_poly, nonnegativize, orient_signs

MUL = "mul"
ADD = "add"
EQ = "eq"
CONST = "const"

SkolemAssignment = dict[int, int]


class SkolemError(ValueError):
    pass


@dataclass(frozen=True)
class SkolemEquation:
    kind: str
    operands: tuple[int, ...]
    value: int | None = None

    def __post_init__(self):
        if any(i < 1 for i in self.operands):
            raise SkolemError("operand indices must be positive")
        if self.kind == CONST and (self.value is None or self.value < 0):
            raise SkolemError("constant equations need a value >= 0")


def mul_eq(i: int, j: int, l: int) -> SkolemEquation:
    return SkolemEquation(MUL, (i, j, l))


def add_eq(i: int, j: int, l: int) -> SkolemEquation:
    return SkolemEquation(ADD, (i, j, l))


def eq_eq(i: int, j: int) -> SkolemEquation:
    return SkolemEquation(EQ, (i, j))


def const_eq(i: int, value: int) -> SkolemEquation:
    return SkolemEquation(CONST, (i,), value)


@dataclass(frozen=True)
class VarOrigin:
    kind: str  # "original" | "product" | "sum" | "const"
    name: str


@dataclass(frozen=True)
class SkolemSystem:
    """Skolemized system before renumbering; operand indices are 1-based into
    ``var_names``."""

    var_names: tuple[str, ...]
    origins: tuple[VarOrigin, ...]
    equations: tuple[SkolemEquation, ...]
    upsilon: int
    source: DiophEquation


def skolemize(eq: DiophEquation) -> SkolemSystem:
    """Reduce an equation (read over nonnegative integers) to a Skolem system.

    Monomials are processed in canonical order, reducing each monomial's
    leftmost factor pair first with a fresh product variable; the pair is
    replaced simultaneously in every monomial containing it.  The resulting
    algebraic sum is folded left to right, positives first, and the final
    constant step always stores |upsilon|.
    """
    eq = orient_signs(eq)
    var_names = list(eq.variables)
    origins = [VarOrigin("original", v) for v in eq.variables]
    name_to_id = {v: i + 1 for i, v in enumerate(var_names)}
    equations: list[SkolemEquation] = []

    def fresh(kind: str, name: str) -> int:
        var_names.append(name)
        origins.append(VarOrigin(kind, name))
        return len(var_names)

    # Working polynomial over variable ids.
    poly: dict[tuple[tuple[int, int], ...], int] = {}
    for coeff, mono in eq.monomials:
        key = tuple(sorted((name_to_id[v], e) for v, e in mono))
        poly[key] = poly.get(key, 0) + coeff

    def canonical(p: dict) -> list[tuple[tuple[tuple[int, int], ...], int]]:
        def key(mono: tuple[tuple[int, int], ...]) -> tuple:
            exps = dict(mono)
            degree = sum(exps.values())
            return (-degree, tuple(-exps.get(i, 0) for i in range(1, len(var_names) + 1)))

        return sorted(p.items(), key=lambda item: key(item[0]))

    product_count = 0
    while True:
        ordered = canonical(poly)
        nonlinear = next((m for m, _ in ordered if sum(e for _, e in m) >= 2), None)
        if nonlinear is None:
            break
        factors: list[int] = []
        for var, exp in nonlinear:
            factors.extend([var] * exp)
        u, v = factors[0], factors[1]
        product_count += 1
        w = fresh("product", f"$p{product_count}")
        equations.append(mul_eq(u, v, w))
        replaced: dict[tuple[tuple[int, int], ...], int] = {}
        for mono, coeff in poly.items():
            exps = dict(mono)
            if u == v:
                count = exps.get(u, 0) // 2
                if count:
                    exps[u] -= 2 * count
            else:
                count = min(exps.get(u, 0), exps.get(v, 0))
                if count:
                    exps[u] -= count
                    exps[v] -= count
            if count:
                exps[w] = exps.get(w, 0) + count
            key = tuple(sorted((i, e) for i, e in exps.items() if e))
            replaced[key] = replaced.get(key, 0) + coeff
        poly = {m: c for m, c in replaced.items() if c != 0}
        if not poly:
            raise SkolemError("polynomial vanished during product reduction")

    positives: list[int] = []
    negatives: list[int] = []
    for mono, coeff in canonical(poly):
        (var, exp), = mono
        assert exp == 1
        (positives if coeff > 0 else negatives).extend([var] * abs(coeff))

    sum_count = 0

    def fold(occurrences: list[int]) -> list[int]:
        nonlocal sum_count
        while len(occurrences) >= 2:
            sum_count += 1
            w = fresh("sum", f"$s{sum_count}")
            equations.append(add_eq(occurrences[0], occurrences[1], w))
            occurrences[0:2] = [w]
        return occurrences

    positives = fold(positives)
    negatives = fold(negatives)
    upsilon = eq.rhs

    if positives and negatives:
        pos, neg = positives[0], negatives[0]
        w = fresh("const", "$c")
        if upsilon >= 0:
            equations.append(add_eq(neg, w, pos))
        else:
            equations.append(add_eq(pos, w, neg))
        equations.append(const_eq(w, abs(upsilon)))
    elif positives:
        if upsilon < 0:
            raise SkolemError(
                "left side is a sum of nonnegative terms but the right side is negative; "
                "no nonnegative Skolem system represents this"
            )
        equations.append(const_eq(positives[0], upsilon))
    else:
        if upsilon > 0:
            raise SkolemError(
                "left side is a negated sum of nonnegative terms but the right side is "
                "positive; no nonnegative Skolem system represents this"
            )
        equations.append(const_eq(negatives[0], -upsilon))

    return SkolemSystem(tuple(var_names), tuple(origins), tuple(equations), upsilon, eq)


@dataclass(frozen=True)
class NormalizedSkolem:
    """Renumbered system: e MUL equations on indices 1..3e, d ADD equations on
    3e+1..3(e+d), q equalities, and one constant equation."""

    e: int
    d: int
    equalities: tuple[tuple[int, int], ...]
    const_var: int  # 0 in the degenerate case
    const_value: int
    upsilon: int
    degenerate: bool
    # per new index 1..3(e+d): (system variable id, copy rank)
    provenance: tuple[tuple[int, int], ...]
    system: SkolemSystem

    @property
    def q(self) -> int:
        return len(self.equalities)

    @property
    def var_count(self) -> int:
        return 3 * (self.e + self.d)


def mul_operands(ns: NormalizedSkolem, m: int) -> tuple[int, int, int]:
    if not 1 <= m <= ns.e:
        raise SkolemError(f"MUL block index {m} outside [1, {ns.e}]")
    base = 3 * (m - 1)
    return (base + 1, base + 2, base + 3)


def add_operands(ns: NormalizedSkolem, m: int) -> tuple[int, int, int]:
    if not 1 <= m <= ns.d:
        raise SkolemError(f"ADD block index {m} outside [1, {ns.d}]")
    base = 3 * ns.e + 3 * (m - 1)
    return (base + 1, base + 2, base + 3)


def variable_block(ns: NormalizedSkolem, index: int) -> tuple[str, int, int]:
    """Locate a normalized variable: (block kind, block index, operand slot 0..2)."""
    if not 1 <= index <= ns.var_count:
        raise SkolemError(f"variable index {index} outside [1, {ns.var_count}]")
    if index <= 3 * ns.e:
        return (MUL, (index - 1) // 3 + 1, (index - 1) % 3)
    offset = index - 3 * ns.e - 1
    return (ADD, offset // 3 + 1, offset % 3)


def normalize(sys: SkolemSystem) -> NormalizedSkolem:
    """Copy duplicated variables apart and renumber per the block layout.

    Every occurrence of a system variable in a MUL/ADD operand slot gets its
    own index; the occurrences of one variable are chained by a path of
    equality equations (k occurrences yield k-1 equalities).  Equality
    equations already present in the input are translated and kept, so
    normalizing a normalized system changes nothing.
    """
    muls = [e for e in sys.equations if e.kind == MUL]
    adds = [e for e in sys.equations if e.kind == ADD]
    eqs = [e for e in sys.equations if e.kind == EQ]
    consts = [e for e in sys.equations if e.kind == CONST]
    if len(consts) != 1:
        raise SkolemError(f"expected exactly one constant equation, found {len(consts)}")
    const = consts[0]
    e, d = len(muls), len(adds)

    if e == 0 and d == 0:
        if eqs:
            raise SkolemError("equality equations without product/sum equations")
        return NormalizedSkolem(
            e=0, d=0, equalities=(), const_var=0, const_value=const.value or 0,
            upsilon=sys.upsilon, degenerate=True, provenance=(), system=sys,
        )

    occurrences: dict[int, list[int]] = {}
    provenance: list[tuple[int, int]] = []
    next_index = 1
    for equation in muls + adds:
        for var in equation.operands:
            occ = occurrences.setdefault(var, [])
            provenance.append((var, len(occ)))
            occ.append(next_index)
            next_index += 1

    equalities: list[tuple[int, int]] = []
    for var in sorted(occurrences, key=lambda v: occurrences[v][0]):
        occ = occurrences[var]
        equalities.extend(zip(occ, occ[1:]))
    for equation in eqs:
        translated = []
        for var in equation.operands:
            if var not in occurrences:
                raise SkolemError(
                    f"equality references variable {sys.var_names[var - 1]!r} that occurs "
                    "in no product or sum equation"
                )
            translated.append(occurrences[var][0])
        if translated[0] != translated[1]:
            equalities.append((translated[0], translated[1]))

    const_source = const.operands[0]
    if const_source not in occurrences:
        raise SkolemError(
            f"constant variable {sys.var_names[const_source - 1]!r} occurs in no product "
            "or sum equation"
        )

    return NormalizedSkolem(
        e=e,
        d=d,
        equalities=tuple(equalities),
        const_var=occurrences[const_source][0],
        const_value=const.value or 0,
        upsilon=sys.upsilon,
        degenerate=False,
        provenance=tuple(provenance),
        system=sys,
    )


def normalize_equation(eq: DiophEquation, nonneg: bool = False) -> NormalizedSkolem:
    """Full front half of the pipeline: split variables (unless the equation is
    to be read over nonnegative integers as-is), skolemize, normalize."""
    if not nonneg:
        eq = nonnegativize(eq)
    return normalize(skolemize(eq))


def check_assignment(ns: NormalizedSkolem, s: Mapping[int, int]) -> bool:
    """True iff every MUL, ADD, EQ and CONST equation holds under s."""
    if ns.degenerate:
        return True
    missing = [i for i in range(1, ns.var_count + 1) if i not in s]
    if missing:
        raise SkolemError(f"assignment missing variable indices: {missing}")
    for m in range(1, ns.e + 1):
        i, j, l = mul_operands(ns, m)
        if s[i] * s[j] != s[l]:
            return False
    for m in range(1, ns.d + 1):
        i, j, l = add_operands(ns, m)
        if s[i] + s[j] != s[l]:
            return False
    for i, j in ns.equalities:
        if s[i] != s[j]:
            return False
    return s[ns.const_var] == ns.const_value


def lift_solution(eq: DiophEquation, s: Assignment, ns: NormalizedSkolem) -> SkolemAssignment:
    """Extend an integer solution of ``eq`` to an assignment satisfying ``ns``.

    Each variable value splits as max(v, 0) - max(-v, 0); introduced product
    and sum variables are then evaluated bottom-up and copies inherit their
    source's value.  The result always passes :func:`check_assignment`.
    """
    if eval_poly(eq, s) != eq.rhs:
        raise SkolemError(f"assignment {s} does not solve {eq}")
    source = ns.system.source
    values: dict[int, int] = {}
    name_to_id = {v: i + 1 for i, v in enumerate(ns.system.var_names)}
    if source.split_pairs is not None and {v for v, _, _ in source.split_pairs} == set(eq.variables):
        for var, pos, neg in source.split_pairs:
            values[name_to_id[pos]] = max(s[var], 0)
            values[name_to_id[neg]] = max(-s[var], 0)
    elif set(source.variables) <= set(s):
        for var in source.variables:
            if s[var] < 0:
                raise SkolemError(f"nonnegative system requires {var} >= 0, got {s[var]}")
            values[name_to_id[var]] = s[var]
    else:
        raise SkolemError("assignment does not match the system's source equation")

    for equation in ns.system.equations:
        if equation.kind == CONST:
            values[equation.operands[0]] = equation.value or 0

    changed = True
    while changed:
        changed = False
        for equation in ns.system.equations:
            if equation.kind not in (MUL, ADD):
                continue
            i, j, l = equation.operands
            if i in values and j in values and l not in values:
                values[l] = values[i] * values[j] if equation.kind == MUL else values[i] + values[j]
                changed = True

    for equation in ns.system.equations:
        if equation.kind == MUL or equation.kind == ADD:
            i, j, l = equation.operands
            if any(v not in values for v in (i, j, l)):
                raise SkolemError("could not evaluate every introduced variable")
            lhs = values[i] * values[j] if equation.kind == MUL else values[i] + values[j]
            if lhs != values[l]:
                raise SkolemError(f"lifted values violate {equation}")
        elif equation.kind == EQ:
            i, j = equation.operands
            if values.get(i) != values.get(j):
                raise SkolemError(f"lifted values violate {equation}")

    lifted = {index + 1: values[source_var] for index, (source_var, _) in enumerate(ns.provenance)}
    if not check_assignment(ns, lifted):
        raise SkolemError("lifted assignment fails the normalized system")
    return lifted


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size + 1))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def ns_enumerate(
    ns: NormalizedSkolem, bound: int, node_cap: int = 10**7
) -> SkolemAssignment | None:
    """Complete search for a solution of ``ns`` with every value in [0, bound].

    This is an independent oracle: it reads only the normalized equations.
    Equalities are contracted into classes; a depth-first search branches on
    the first undetermined class (values ascending) and runs unit propagation
    over the three-variable equations after every choice.
    """
    if ns.degenerate:
        return {} if ns.const_value <= bound else None
    if ns.const_value > bound:
        return None

    uf = _UnionFind(ns.var_count)
    for i, j in ns.equalities:
        uf.union(i, j)
    equations = [(MUL, *mul_operands(ns, m)) for m in range(1, ns.e + 1)]
    equations += [(ADD, *add_operands(ns, m)) for m in range(1, ns.d + 1)]
    slot_order = [uf.find(x) for _, i, j, l in equations for x in (i, j, l)]

    nodes = 0

    def propagate(values: dict[int, int]) -> bool:
        changed = True
        while changed:
            changed = False
            for op, i, j, l in equations:
                ri, rj, rl = uf.find(i), uf.find(j), uf.find(l)
                vi, vj, vl = values.get(ri), values.get(rj), values.get(rl)
                known = (vi is not None) + (vj is not None) + (vl is not None)
                if known < 2:
                    continue
                if known == 3:
                    if op == MUL:
                        if vi * vj != vl:
                            return False
                    elif vi + vj != vl:
                        return False
                    continue
                if op == ADD:
                    if vl is None:
                        rep, new = rl, vi + vj
                    elif vi is None:
                        rep, new = ri, vl - vj
                    else:
                        rep, new = rj, vl - vi
                    if not 0 <= new <= bound:
                        return False
                    values[rep] = new
                    changed = True
                else:
                    if vl is None:
                        new = vi * vj
                        if new > bound:
                            return False
                        values[rl] = new
                        changed = True
                    else:
                        other, rep = (vj, ri) if vi is None else (vi, rj)
                        if other == 0:
                            if vl != 0:
                                return False
                            continue  # operand stays free
                        if vl % other:
                            return False
                        new = vl // other
                        if new > bound:
                            return False
                        values[rep] = new
                        changed = True
        return True

    def dfs(values: dict[int, int]) -> dict[int, int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SkolemError(f"enumeration exceeded the node cap of {node_cap}")
        unknown = next((r for r in slot_order if r not in values), None)
        if unknown is None:
            return values
        for candidate in range(bound + 1):
            trial = dict(values)
            trial[unknown] = candidate
            if propagate(trial):
                found = dfs(trial)
                if found is not None:
                    return found
        return None

    seed = {uf.find(ns.const_var): ns.const_value}
    if not propagate(seed):
        return None
    solution = dfs(seed)
    if solution is None:
        return None
    return {index: solution[uf.find(index)] for index in range(1, ns.var_count + 1)}


def render_normalized(ns: NormalizedSkolem) -> str:
    """Text dump: numbered MUL and ADD equations, equality list, constant."""
    if ns.degenerate:
        name = ns.system.var_names[ns.system.equations[-1].operands[0] - 1]
        return f"{name} = {ns.const_value}"
    lines = []
    for m in range(1, ns.e + 1):
        i, j, l = mul_operands(ns, m)
        lines.append(f"{m}: z{i} * z{j} = z{l}")
    for m in range(1, ns.d + 1):
        i, j, l = add_operands(ns, m)
        lines.append(f"{ns.e + m}: z{i} + z{j} = z{l}")
    for k, (i, j) in enumerate(ns.equalities, 1):
        lines.append(f"P{ns.e + ns.d + k}: z{i} = z{j}")
    lines.append(f"z{ns.const_var} = {ns.const_value}")
    return "\n".join(lines)


def validate_normalized(ns: NormalizedSkolem) -> None:
    """Check the structural invariants of a normalized system; raises on any
    violation."""
    if ns.degenerate:
        if ns.e or ns.d or ns.equalities or ns.const_var:
            raise SkolemError("degenerate system carries block data")
        return
    n = ns.var_count
    if len(ns.provenance) != n:
        raise SkolemError("provenance does not cover every variable index")
    for i, j in ns.equalities:
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise SkolemError(f"bad equality operands ({i}, {j})")
    if not 1 <= ns.const_var <= n:
        raise SkolemError("constant variable outside the renumbered range")

    uf = _UnionFind(n)
    for i, j in ns.equalities:
        uf.union(i, j)
    by_source: dict[int, list[int]] = {}
    for index, (source_var, _) in enumerate(ns.provenance, 1):
        by_source.setdefault(source_var, []).append(index)
    for indices in by_source.values():
        roots = {uf.find(i) for i in indices}
        if len(roots) != 1:
            raise SkolemError("copies of one source variable are not linked by equalities")
    roots_to_source: dict[int, int] = {}
    for index, (source_var, rank) in enumerate(ns.provenance, 1):
        root = uf.find(index)
        if roots_to_source.setdefault(root, source_var) != source_var:
            raise SkolemError("an equality links copies of different source variables")
        if rank != by_source[source_var].index(index):
            raise SkolemError("copy ranks out of order")
