"""The full compiler pipeline on one equation, stage by stage.

Takes x^2 = 4 from text to a membership instance: split each integer variable
into a difference of nonnegative ones, rewrite as a system of products, sums,
equalities and one constant, renumber into the block layout, and emit the
generators, markers and target.  A known solution (x = -2) is then lifted to
a witness word and verified component by component.
"""

from heismem.dioph import nonnegativize, parse_equation, render_equation
from heismem.heis import render_power
from heismem.reduction import ADD, MUL, block_table, compile_instance
from heismem.skolem import lift_solution, normalize, render_normalized, skolemize
from heismem.witness import build_witness, verify_witness

eq = parse_equation("x^2 = 4")
print(f"equation:        {render_equation(eq)}")

split = nonnegativize(eq)
print(f"nonnegative:     {render_equation(split)}   (x = x1 - x2)")

ns = normalize(skolemize(split))
print(f"\nskolem system (e={ns.e}, d={ns.d}, q={ns.q}):")
print(render_normalized(ns))

inst = compile_instance(ns)
print(f"\ninstance: H^{inst.n} with {len(inst.generators)} generators")
print(f"generator names: {' '.join(g.name for g in inst.generators[:14])} ... ")

print("\nfirst product block:")
print(block_table(inst, MUL, 1))
print("\nfirst sum block:")
print(block_table(inst, ADD, 1))

print("\ntarget element:")
print(render_power(inst.target))

solution = {"x": -2}
lifted = lift_solution(eq, solution, ns)
word = build_witness(inst, lifted)
print(f"\nlifting x = -2: skolem values {lifted}")
print(f"witness word: {word.length} generator applications in {len(word.steps)} slots")
report = verify_witness(inst, word)
print(report.render())

bad = dict(lifted)
bad[ns.const_var] = bad[ns.const_var] + 1
report = verify_witness(inst, build_witness(inst, bad))
print("\nbreaking the constant on purpose:")
print(report.render())
