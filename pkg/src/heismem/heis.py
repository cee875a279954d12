"""Exact arithmetic in the integer Heisenberg group H and its direct powers H^n.

Elements of H are kept in the normal form a^alpha b^beta c^gamma, where a and b
are the elementary transvections t12 and t23 and c = [b, a] is the central
commutator (the inverse transvection t13).  The normal form is unique, so two
elements are equal iff their coordinate triples are equal.

All coordinates are plain Python integers: the central coordinate grows like a
product of the other two, and silent fixed-width overflow would corrupt every
membership check built on top of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

Mat3 = tuple[tuple[int, int, int], ...]

MAT_IDENTITY: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class HeisElem:
    """A group element in normal form; immutable value object."""

    alpha: int = 0
    beta: int = 0
    gamma: int = 0

    def __mul__(self, other: "HeisElem") -> "HeisElem":
        return h_mul(self, other)

    def __pow__(self, k: int) -> "HeisElem":
        return h_pow(self, k)

    def inverse(self) -> "HeisElem":
        return h_inv(self)

    def is_identity(self) -> bool:
        return self.alpha == 0 and self.beta == 0 and self.gamma == 0

    def __str__(self) -> str:
        return render_elem(self)


IDENTITY = HeisElem(0, 0, 0)
A = HeisElem(1, 0, 0)
B = HeisElem(0, 1, 0)
C = HeisElem(0, 0, 1)


def h_mul(x: HeisElem, y: HeisElem) -> HeisElem:
    """Product in normal form.

    Collecting b^beta1 past a^alpha2 costs the central factor c^(beta1*alpha2),
    which is the only correction to coordinatewise addition.
    """
    return HeisElem(
        x.alpha + y.alpha,
        x.beta + y.beta,
        x.gamma + y.gamma + x.beta * y.alpha,
    )


def h_inv(x: HeisElem) -> HeisElem:
    """Group inverse: (-alpha, -beta, alpha*beta - gamma)."""
    return HeisElem(-x.alpha, -x.beta, x.alpha * x.beta - x.gamma)


def h_pow(x: HeisElem, k: int) -> HeisElem:
    """k-th power for any integer k, in closed form.

    The central correction is binomial(k, 2) * beta * alpha; the formula is
    valid for negative k as well (it agrees with powers of the inverse).
    """
    return HeisElem(
        k * x.alpha,
        k * x.beta,
        k * x.gamma + (k * (k - 1) // 2) * x.beta * x.alpha,
    )


def commutator(x: HeisElem, y: HeisElem) -> HeisElem:
    """[x, y] = x^-1 y^-1 x y; always central in H."""
    return h_mul(h_mul(h_inv(x), h_inv(y)), h_mul(x, y))


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def to_matrix(x: HeisElem) -> Mat3:
    """Image in the 3x3 unitriangular matrix model.

    a = t12, b = t23 and c = t13^-1, so a^alpha b^beta c^gamma has entry
    (1,2) = alpha, (2,3) = beta and (1,3) = alpha*beta - gamma.
    """
    return (
        (1, x.alpha, x.alpha * x.beta - x.gamma),
        (0, 1, x.beta),
        (0, 0, 1),
    )


def from_matrix(m: Mat3) -> HeisElem:
    """Inverse of :func:`to_matrix`; rejects non-unitriangular input."""
    if len(m) != 3 or any(len(row) != 3 for row in m):
        raise ValueError("expected a 3x3 matrix")
    if (m[0][0], m[1][1], m[2][2]) != (1, 1, 1) or (m[1][0], m[2][0], m[2][1]) != (0, 0, 0):
        raise ValueError("matrix is not upper unitriangular")
    alpha, beta = m[0][1], m[1][2]
    return HeisElem(alpha, beta, alpha * beta - m[0][2])


def render_elem(x: HeisElem) -> str:
    """Canonical text form, e.g. "a^2 b c^-1"; the identity renders as "1"."""
    parts = []
    for letter, exp in (("a", x.alpha), ("b", x.beta), ("c", x.gamma)):
        if exp == 0:
            continue
        parts.append(letter if exp == 1 else f"{letter}^{exp}")
    return " ".join(parts) if parts else "1"


class PowerElem:
    """Element of H^n as a sparse map from 1-based component index to HeisElem.

    Only nontrivial components are stored, so equality and hashing see exactly
    one representation per group element.  Instances are immutable.
    """

    __slots__ = ("ambient", "_comps", "_key")

    def __init__(self, ambient: int, components: Mapping[int, HeisElem] | None = None):
        if ambient < 1:
            raise ValueError(f"ambient power must be positive, got {ambient}")
        comps: dict[int, HeisElem] = {}
        for index, elem in (components or {}).items():
            if not 1 <= index <= ambient:
                raise ValueError(f"component index {index} outside [1, {ambient}]")
            if not elem.is_identity():
                comps[index] = elem
        self.ambient = ambient
        self._comps = comps
        self._key = (ambient, tuple(sorted((i, e.alpha, e.beta, e.gamma) for i, e in comps.items())))

    @property
    def components(self) -> Mapping[int, HeisElem]:
        return MappingProxyType(self._comps)

    def component(self, index: int) -> HeisElem:
        if not 1 <= index <= self.ambient:
            raise ValueError(f"component index {index} outside [1, {self.ambient}]")
        return self._comps.get(index, IDENTITY)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._comps))

    def is_identity(self) -> bool:
        return not self._comps

    def key(self) -> tuple:
        """Canonical hashable key (used for search-state deduplication)."""
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PowerElem) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __mul__(self, other: "PowerElem") -> "PowerElem":
        return dp_mul(self, other)

    def __pow__(self, k: int) -> "PowerElem":
        return dp_pow(self, k)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {render_elem(e)}" for i, e in sorted(self._comps.items()))
        return f"PowerElem(n={self.ambient}, {{{body}}})"


def dp_identity(ambient: int) -> PowerElem:
    return PowerElem(ambient)


def dp_from_items(ambient: int, items: Iterable[tuple[int, HeisElem]]) -> PowerElem:
    """Build from (index, elem) pairs, multiplying repeated indices together."""
    comps: dict[int, HeisElem] = {}
    for index, elem in items:
        comps[index] = h_mul(comps.get(index, IDENTITY), elem)
    return PowerElem(ambient, comps)


def dp_mul(u: PowerElem, v: PowerElem) -> PowerElem:
    """Componentwise product; identity components are dropped again."""
    if u.ambient != v.ambient:
        raise ValueError(f"ambient mismatch: {u.ambient} vs {v.ambient}")
    comps = dict(u._comps)
    for index, elem in v._comps.items():
        prod = h_mul(comps.get(index, IDENTITY), elem)
        if prod.is_identity():
            comps.pop(index, None)
        else:
            comps[index] = prod
    return PowerElem(u.ambient, comps)


def dp_inv(u: PowerElem) -> PowerElem:
    return PowerElem(u.ambient, {i: h_inv(e) for i, e in u._comps.items()})


def dp_pow(u: PowerElem, k: int) -> PowerElem:
    if k == 0:
        return PowerElem(u.ambient)
    return PowerElem(u.ambient, {i: h_pow(e, k) for i, e in u._comps.items()})


def render_power(u: PowerElem) -> str:
    """One "comp i: <elem>" line per nontrivial component; "identity" if none."""
    if u.is_identity():
        return "identity"
    return "\n".join(f"comp {i}: {render_elem(u.component(i))}" for i in u.support())


def iter_components(u: PowerElem) -> Iterator[tuple[int, HeisElem]]:
    for i in u.support():
        yield i, u.component(i)
