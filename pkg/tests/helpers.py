"""Shared fixtures: the small hand-built membership instances used across the
witness and acceptance tests."""

from __future__ import annotations

from heismem.heis import B, PowerElem, h_inv, h_mul, A, C
from heismem.reduction import (
    ReductionInstance,
    gadget_elements,
    gadget_target,
    instance_from_elements,
)

AC = h_mul(A, C)


def cancellation_instance() -> ReductionInstance:
    """H^1 with generators {ac, b, a^-1}: the only way to spell b is
    (ac)^k b a^-k, so it pins the exponent-balancing mechanism."""
    return instance_from_elements(
        [
            ("g1", PowerElem(1, {1: AC})),
            ("b", PowerElem(1, {1: B})),
            ("g2", PowerElem(1, {1: h_inv(A)})),
        ],
        PowerElem(1, {1: B}),
    )


def sum_gadget_instance() -> ReductionInstance:
    """The 4-component sum gadget as a standalone instance with target b1 b2 b3."""
    elements = gadget_elements("add")
    order = ("g1", "g2", "g3", "g4", "g5", "g6", "f1")
    return instance_from_elements(
        [(slot, elements[slot]) for slot in order], gadget_target("add")
    )


def a1_target_instance() -> ReductionInstance:
    """Same generators as cancellation_instance but with the unreachable
    target a1."""
    base = cancellation_instance()
    return ReductionInstance(
        n=base.n, generators=base.generators, target=PowerElem(1, {1: A})
    )
