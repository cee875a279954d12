"""The product gadget: forcing z * z' = z'' with eight Heisenberg components.

Addition is easy to enforce because exponents add along a word.  To get
multiplication, a chain gadget first threads the same pair of exponents
through three b-stops (components 1-6), always collapsing to b1..b6.  The full gadget
then adds component 7, where a^z and b^z' from different stops are forced past
each other, depositing c^(-z*z'), and component 8, whose generator g9 both
closes its own cancellation loop and drops c^(+z'') into component 7.  The
product over H^8 equals b1..b6 b8 exactly when z * z' = z''.
"""

from heismem.heis import render_elem
from heismem.reduction import gadget_elements, gadget_target, gadget_template, template_value

chain = gadget_elements("chain")
chain_template = gadget_template("chain")
chain_target = gadget_target("chain")
print("chain gadget over H^6 collapses for every exponent pair:")
for z, zp in ((0, 0), (1, 2), (3, 3), (5, 1)):
    hit = template_value(chain, chain_template, (z, zp)) == chain_target
    print(f"  z={z} z'={zp}: product == b1..b6 is {hit}")

elements = gadget_elements("mul")
template = gadget_template("mul")
target = gadget_target("mul")

print("\nproduct gadget generators touching the bookkeeping component 7:")
for slot in ("g1", "g4", "g5", "g8", "g9"):
    part = elements[slot].component(7)
    print(f"  {slot}: comp 7 holds {render_elem(part)}")

print("\ngrid over 0 <= z, z' <= 3 with z'' = z * z' (should always hit):")
for z in range(4):
    for zp in range(4):
        hit = template_value(elements, template, (z, zp, z * zp)) == target
        print(f"  {z} * {zp} = {z * zp}: {hit}")

print("\nand with z'' off by one (should always miss):")
misses = sum(
    template_value(elements, template, (z, zp, z * zp + 1)) != target
    for z in range(4) for zp in range(4)
)
print(f"  {misses} of 16 off-by-one triples miss, leftover sits in component 7:")
value = template_value(elements, template, (2, 3, 5))
print(f"  exponents (2, 3, 5): component 7 holds {render_elem(value.component(7))} = c^(5 - 6)")
