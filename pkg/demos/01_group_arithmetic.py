"""Heisenberg group arithmetic: coordinates against matrices.

Every element has a unique normal form a^alpha b^beta c^gamma, so the whole
group lives in coordinate triples.  Multiplication only has to account for one
interaction: moving b past a costs a central factor c.  This script shows the
coordinate law agreeing with honest 3x3 matrix multiplication, and the
cancellation identity that every gadget in this package is built from.
"""

from heismem.heis import (
    A, B, C, HeisElem, PowerElem, commutator, dp_mul, h_inv, h_mul, h_pow,
    mat_mul, render_elem, render_power, to_matrix,
)

print("generators:")
print(f"  a = {render_elem(A)}   -> {to_matrix(A)}")
print(f"  b = {render_elem(B)}   -> {to_matrix(B)}")
print(f"  c = {render_elem(C)} -> {to_matrix(C)}")

print("\nb * a picks up the central commutator:")
print(f"  a * b = {render_elem(h_mul(A, B))}")
print(f"  b * a = {render_elem(h_mul(B, A))}")
print(f"  [b, a] = {render_elem(commutator(B, A))}")

x = HeisElem(2, 3, 1)
y = HeisElem(-1, 4, 0)
print(f"\ncoordinate law vs matrices for x = {render_elem(x)}, y = {render_elem(y)}:")
print(f"  coordinates: {render_elem(h_mul(x, y))}")
print(f"  matrices:    {mat_mul(to_matrix(x), to_matrix(y))}")
print(f"  to_matrix(x*y) == product: {to_matrix(h_mul(x, y)) == mat_mul(to_matrix(x), to_matrix(y))}")

print(f"\ninverse of {render_elem(x)} is {render_elem(h_inv(x))}; "
      f"product: {render_elem(h_mul(x, h_inv(x)))}")

print("\nthe identity behind every gadget: (a c)^k * b * a^-k = b")
for k in (0, 1, 5, 40):
    value = h_mul(h_mul(h_pow(HeisElem(1, 0, 1), k), B), h_pow(A, -k))
    print(f"  k = {k:2d}: {render_elem(value)}")

print("\ndirect powers are componentwise; only nontrivial components are stored:")
u = PowerElem(4, {1: A, 4: C})
v = PowerElem(4, {2: B, 4: h_inv(C)})
print("u:")
print(render_power(u))
print("v:")
print(render_power(v))
print("u * v:")
print(render_power(dp_mul(u, v)))
