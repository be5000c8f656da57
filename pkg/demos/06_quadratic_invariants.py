"""Quadratic refinements on surface homology: Arf, Brown, loop formulas."""

from conjtop import (
    LoopData,
    QForm2,
    QForm4,
    arf,
    brown,
    evaluate_q4,
    model_library,
    pin_value_from_loops,
    qform_from_loop_table,
    spin_value_from_loops,
)
from conjtop.gf2 import Gf2Matrix

print("== Arf invariants of the two rank-2 standard forms ==")
hyp = Gf2Matrix.from_rows([[0, 1], [1, 0]])
print(f"q(a)=q(b)=0: Arf = {arf(QForm2(hyp, [0, 0]))}")
print(f"q(a)=q(b)=1: Arf = {arf(QForm2(hyp, [1, 1]))}")

print()
print("== Brown invariants by exact Gauss sums ==")
one = Gf2Matrix.from_rows([[1]])
for v in (1, 3):
    print(f"rank-1 form with q(e)={v}: Brown = {brown(QForm4(one, [v]))}")
print(f"direct sum <1> + <3> cancels: Brown = {brown(QForm4(Gf2Matrix.identity(2), [1, 3]))}")
print(f"four copies of <1>: Brown = {brown(QForm4(Gf2Matrix.identity(4), [1, 1, 1, 1]))}")

print()
print("== Loop formulas ==")
print("spin value of one loop with zero linking:",
      spin_value_from_loops(LoopData(1, (0,))))
print("pin value of one loop, zero linking, one crossing:",
      pin_value_from_loops(LoopData(1, (0,), 1)))

print()
print("== Forms built from bundled loop tables ==")
lib = model_library()
q_torus = qform_from_loop_table(lib.loops["torus_loops"])
print(f"torus spin form: values {q_torus.values}, Arf = {arf(q_torus)}")
q_rp2 = qform_from_loop_table(lib.loops["rp2_loops"])
print(f"projective-plane pin form: q(e) = {evaluate_q4(q_rp2, 1)}, "
      f"Brown = {brown(q_rp2)}")
q_kb = qform_from_loop_table(lib.loops["klein_loops"])
print(f"Klein-bottle pin form: values {q_kb.values}, Brown = {brown(q_kb)}")
