"""Independent membership search and the end-to-end consistency check.

The bounded breadth-first search knows nothing about templates: it multiplies
generators, deduplicates states by canonical coordinates, and prunes on a
coordinate bound.  On small instances it rediscovers the template witnesses;
on unsolvable equations it comes back empty within its bounds, matching the
box enumeration on the equation side.  Membership in general is undecidable,
so absence is only ever conclusive within the stated bounds.
"""

from heismem.heis import B, HeisElem, PowerElem, h_inv, h_mul
from heismem.reduction import instance_from_elements
from heismem.witness import bounded_membership_search, reduction_roundtrip

A = HeisElem(1, 0, 0)
AC = h_mul(A, HeisElem(0, 0, 1))

inst = instance_from_elements(
    [("g1", PowerElem(1, {1: AC})), ("b", PowerElem(1, {1: B})), ("g2", PowerElem(1, {1: h_inv(A)}))],
    PowerElem(1, {1: B}),
)
result = bounded_membership_search(inst, 9)
print("H^1 instance with generators {ac, b, a^-1}, target b:")
print(f"  found witness of length {result.word.length} after {result.states_explored} states")

harder = instance_from_elements(
    [("g1", PowerElem(1, {1: AC})), ("b", PowerElem(1, {1: B})), ("g2", PowerElem(1, {1: h_inv(A)}))],
    PowerElem(1, {1: HeisElem(0, 1, 1)}),
)
result = bounded_membership_search(harder, 9)
names = " ".join(harder.generators[i].name + (f"^{m}" if m != 1 else "") for i, m in result.word)
print(f"\ntarget b*c needs a balanced loop: {names} (length {result.word.length})")

unreachable = instance_from_elements(
    [("g1", PowerElem(1, {1: AC})), ("b", PowerElem(1, {1: B})), ("g2", PowerElem(1, {1: h_inv(A)}))],
    PowerElem(1, {1: A}),
)
result = bounded_membership_search(unreachable, 8)
print(f"\ntarget a alone: {result.status} within length 8 "
      f"(coordinate bound {result.coord_bound})")

print("\nfull roundtrips:")
for text, box, search in (("x + y = 3", 3, None), ("x*y = 6", 6, None), ("x^2 = 2", 10, 3)):
    report = reduction_roundtrip(text, box, search_len=search)
    print(f"\n{report.render()}")
