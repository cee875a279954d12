"""Multivariate integer polynomial equations D(x1, ..., xt) = v.

The left side is a collected polynomial with zero constant term; constants
appearing in the input are folded into the right-hand integer.  Equations are
kept in a canonical form (sorted variables, graded-lexicographic monomial
order) so that identical inputs always produce identical downstream artifacts.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

# A monomial's exponent part: ((var, exp), ...) sorted by variable name.
Mono = tuple[tuple[str, int], ...]
Assignment = dict[str, int]

CANDIDATE_CAP = 10**8


class EquationError(ValueError):
    pass


class ParseError(EquationError):
    """Syntax error with the 0-based offset of the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EnumerationCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class DiophEquation:
    variables: tuple[str, ...]
    monomials: tuple[tuple[int, Mono], ...]
    rhs: int
    # (original, positive, negative) name triples recorded by nonnegativize;
    # metadata only, excluded from equality.
    split_pairs: tuple[tuple[str, str, str], ...] | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return render_equation(self)


def _grlex_key(mono: Mono, variables: tuple[str, ...]) -> tuple:
    exps = dict(mono)
    degree = sum(exps.values())
    return (-degree, tuple(-exps.get(v, 0) for v in variables))


def collect(raw: Iterable[tuple[int, Mapping[str, int]]], rhs: int) -> DiophEquation:
    """Collect like monomials, fold constants into the right side, and order.

    Zero exponents and zero coefficients are dropped.  Raises if nothing with a
    variable survives: the form requires a nonconstant left side.
    """
    merged: dict[Mono, int] = {}
    for coeff, exps in raw:
        if coeff == 0:
            continue
        cleaned = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
        if any(e < 0 for _, e in cleaned):
            raise EquationError("negative exponents are not allowed")
        if not cleaned:
            rhs -= coeff
            continue
        merged[cleaned] = merged.get(cleaned, 0) + coeff
    merged = {m: c for m, c in merged.items() if c != 0}
    if not merged:
        raise EquationError("left side has no monomials after collection")
    variables = tuple(sorted({v for mono in merged for v, _ in mono}))
    ordered = sorted(merged.items(), key=lambda item: _grlex_key(item[0], variables))
    return DiophEquation(variables, tuple((c, m) for m, c in ordered), rhs)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*^=]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent for: poly ('=' poly), poly = [sign] term (sign term)*,
    term = factor ('*' factor)*, factor = INT | NAME ['^' INT]."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_int(self) -> int:
        kind, value, pos = self.advance()
        if kind != "int":
            raise ParseError("expected an integer", pos)
        return int(value)

    def factor(self) -> tuple[int, dict[str, int]]:
        kind, value, pos = self.advance()
        if kind == "int":
            base_coeff, base_exps = int(value), {}
        elif kind == "name":
            base_coeff, base_exps = 1, {value: 1}
        else:
            raise ParseError("expected a variable or an integer", pos)
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            exp_pos = self.peek()[2]
            exp = self.expect_int()
            if base_exps:
                if exp == 0:
                    base_exps = {}
                else:
                    base_exps = {value: exp}
            else:
                if exp > 60 and base_coeff not in (0, 1):
                    raise ParseError("constant exponent too large", exp_pos)
                base_coeff = base_coeff**exp
        return base_coeff, base_exps

    def term(self) -> tuple[int, dict[str, int]]:
        coeff, exps = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.advance()
            c, e = self.factor()
            coeff *= c
            for v, k in e.items():
                exps[v] = exps.get(v, 0) + k
        return coeff, exps

    def poly(self) -> list[tuple[int, dict[str, int]]]:
        monomials = []
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.advance()[1] == "-" else 1
        coeff, exps = self.term()
        monomials.append((sign * coeff, exps))
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.advance()[1] == "-" else 1
            coeff, exps = self.term()
            monomials.append((sign * coeff, exps))
        return monomials


def parse_equation(text: str) -> DiophEquation:
    """Parse "lhs = rhs" into canonical form.

    Variable terms on the right are moved to the left; constant terms on the
    left are folded into the right-hand integer.
    """
    parser = _Parser(text)
    left = parser.poly()
    kind, value, pos = parser.advance()
    if (kind, value) != ("op", "="):
        raise ParseError("expected '='", pos)
    right = parser.poly()
    kind, _, pos = parser.advance()
    if kind != "end":
        raise ParseError("trailing input after equation", pos)

    rhs = 0
    monomials = list(left)
    for coeff, exps in right:
        if any(e != 0 for e in exps.values()):
            monomials.append((-coeff, exps))
        else:
            rhs += coeff
    return collect(monomials, rhs)


def render_equation(eq: DiophEquation) -> str:
    """Canonical text; parse_equation(render_equation(eq)) == eq."""
    parts: list[str] = []
    for coeff, mono in eq.monomials:
        factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
        magnitude = abs(coeff)
        if magnitude != 1:
            factors.insert(0, str(magnitude))
        body = "*".join(factors)
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return f"{' '.join(parts)} = {eq.rhs}"


def eval_poly(eq: DiophEquation, assignment: Mapping[str, int]) -> int:
    """Value of the left-hand polynomial at the assignment."""
    missing = [v for v in eq.variables if v not in assignment]
    if missing:
        raise EquationError(f"assignment missing variables: {', '.join(missing)}")
    total = 0
    for coeff, mono in eq.monomials:
        value = coeff
        for v, e in mono:
            value *= assignment[v] ** e
        total += value
    return total


def orient_signs(eq: DiophEquation) -> DiophEquation:
    """Multiply both sides by -1 when every coefficient is negative.

    Keeps downstream passes to the two sanctioned sign profiles (all positive
    or mixed); a no-op otherwise.
    """
    if all(coeff < 0 for coeff, _ in eq.monomials):
        flipped = [(-coeff, dict(mono)) for coeff, mono in eq.monomials]
        out = collect(flipped, -eq.rhs)
        return DiophEquation(out.variables, out.monomials, out.rhs, eq.split_pairs)
    return eq


def _poly_mul(p: list[tuple[int, dict[str, int]]], q: list[tuple[int, dict[str, int]]]) -> list[tuple[int, dict[str, int]]]:
    out: dict[Mono, int] = {}
    for c1, e1 in p:
        for c2, e2 in q:
            exps = dict(e1)
            for v, k in e2.items():
                exps[v] = exps.get(v, 0) + k
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + c1 * c2
    return [(c, dict(m)) for m, c in out.items() if c != 0]


def _split_names(variables: tuple[str, ...]) -> dict[str, tuple[str, str]]:
    taken = set(variables)
    names = {}
    for v in variables:
        pos, neg = f"{v}1", f"{v}2"
        while pos in taken or neg in taken:
            pos += "_"
            neg += "_"
        taken.update({pos, neg})
        names[v] = (pos, neg)
    return names


def nonnegativize(eq: DiophEquation) -> DiophEquation:
    """Rewrite each variable as a difference of two fresh nonnegative ones.

    The result has 2t variables and the same right-hand integer; a solution in
    nonnegative integers projects onto an integer solution of the original via
    v = v1 - v2, and conversely.  The pairing is recorded in ``split_pairs``.
    """
    names = _split_names(eq.variables)
    expanded: list[tuple[int, dict[str, int]]] = []
    for coeff, mono in eq.monomials:
        product: list[tuple[int, dict[str, int]]] = [(coeff, {})]
        for v, e in mono:
            pos, neg = names[v]
            diff = [(1, {pos: 1}), (-1, {neg: 1})]
            for _ in range(e):
                product = _poly_mul(product, diff)
        expanded.extend(product)
    out = orient_signs(collect(expanded, eq.rhs))
    pairs = tuple((v, names[v][0], names[v][1]) for v in eq.variables)
    return DiophEquation(out.variables, out.monomials, out.rhs, pairs)


def project_split(eq: DiophEquation, nonneg_assignment: Mapping[str, int]) -> Assignment:
    """Map a nonnegative solution of nonnegativize(eq) back to eq's variables."""
    if eq.split_pairs is None:
        raise EquationError("equation carries no split metadata")
    return {v: nonneg_assignment[pos] - nonneg_assignment[neg] for v, pos, neg in eq.split_pairs}


def brute_solutions(eq: DiophEquation, bound: int, nonneg: bool = False) -> Iterator[Assignment]:
    """All box solutions in lexicographic order over eq.variables.

    The box is [-bound, bound]^t, or [0, bound]^t when ``nonneg``.  Guarded by
    a candidate cap: this is a desk-scale oracle, not a solver.
    """
    if bound < 1:
        raise EquationError("bound must be positive")
    values = range(0, bound + 1) if nonneg else range(-bound, bound + 1)
    total = len(values) ** len(eq.variables)
    if total > CANDIDATE_CAP:
        raise EnumerationCapError(f"{total} candidates exceed the cap of {CANDIDATE_CAP}")
    for point in itertools.product(values, repeat=len(eq.variables)):
        assignment = dict(zip(eq.variables, point))
        if eval_poly(eq, assignment) == eq.rhs:
            yield assignment


def brute_solve(eq: DiophEquation, bound: int, nonneg: bool = False) -> Assignment | None:
    """First box solution in lexicographic order, or None."""
    return next(brute_solutions(eq, bound, nonneg), None)
