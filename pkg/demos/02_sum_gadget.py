"""The sum gadget: forcing z + z' = z'' with four Heisenberg components.

Seven generators over H^4 admit a product equal to b1 b2 b3 exactly when the
three exponents threaded through them satisfy z + z' = z''.  Components 1-3
each run the cancellation identity for one exponent; component 4 is pure
bookkeeping: it accumulates c^(z + z' - z'') and must vanish.
"""

from heismem.heis import render_elem, render_power
from heismem.reduction import gadget_elements, gadget_target, gadget_template, template_value

elements = gadget_elements("add")
template = gadget_template("add")
target = gadget_target("add")

print("generators over H^4:")
for slot in ("g1", "g2", "g3", "g4", "g5", "g6", "f1"):
    body = ", ".join(f"comp {i}: {render_elem(e)}"
                     for i, e in sorted(elements[slot].components.items()))
    print(f"  {slot}: {body}")

exponent_names = ["z", "z'", "z''"]
print("\ntemplate order:",
      " ".join(slot if op is None else f"{slot}^{exponent_names[op]}"
               for slot, op in template))

print("\ntarget:")
print(render_power(target))

print("\ngrid over 0 <= z, z', z'' <= 3 (X marks product == target):")
print("  z  z' z''  hit   sum holds")
for z in range(4):
    for zp in range(4):
        for zpp in range(4):
            hit = template_value(elements, template, (z, zp, zpp)) == target
            marker = "X" if hit else "."
            print(f"  {z}  {zp}  {zpp}    {marker}     {z + zp == zpp}")

print("\na miss leaves its trace in the bookkeeping component:")
value = template_value(elements, template, (2, 1, 1))
print(f"exponents (2, 1, 1): component 4 holds {render_elem(value.component(4))} "
      f"= c^(2 + 1 - 1 - 1)")
