"""Cut-and-glue coverings and complex semi-orientations of curves."""

from conjtop import (
    betti_numbers,
    branched_double_cover,
    compare_mod_curves,
    curve_complex_semiorientation,
    dividing_test,
    double_cover_unbranched,
    flip_semiorientation,
    model_library,
    orientation_cover,
    stiefel_whitney_cocycle,
)

lib = model_library()

print("== Branched double covers of the sphere ==")
sub = lib.complexes["sphere_octa_sub"]
marks = lib.cycles["sphere_octa_sub"]
for mark, label in (("arc1", "one arc, 2 branch points"),
                    ("arcs_both", "two arcs, 4 branch points")):
    cover = branched_double_cover(sub, [tuple(s) for s in marks[mark]])
    chi = cover.total.euler_characteristic()
    print(f"cut along {label:28s} -> chi={chi}, betti={betti_numbers(cover.total)}")
print("(2 points give the sphere again; 4 points give the torus)")

print()
print("== Orientation covers ==")
rp2 = lib.complexes["rp2_6vertex"]
Y = [tuple(s) for s in lib.cycles["rp2_6vertex"]["generator"]]
cover, semi = orientation_cover(rp2, Y)
print(f"projective plane cut along a line -> betti {betti_numbers(cover.total)} "
      "(the sphere), deck reverses the orientation")
kb = lib.complexes["klein_bottle"]
Yk = [tuple(s) for s in lib.cycles["klein_bottle"]["w1dual"]]
cover_kb, _ = orientation_cover(kb, Yk)
print(f"Klein bottle cut along the orientation class -> betti "
      f"{betti_numbers(cover_kb.total)} (the torus)")
w = stiefel_whitney_cocycle(rp2)
cover_w = double_cover_unbranched(rp2, w)
print(f"same sphere through the cocycle route: betti {betti_numbers(cover_w.total)}")

print()
print("== Dividing curves and their complex semi-orientations ==")
K = lib.complexes["torus_grid"]
_, _, tau = lib.maps["torus_reflection"]
verdict = dividing_test(K, tau)
print(f"torus reflection: dividing={verdict.dividing}, halves of "
      f"{sorted(len(h) for h in verdict.halves)} triangles")
semi = curve_complex_semiorientation(K, tau)
print(f"induced semi-orientation on the two fixed circles: {semi}")

_, _, diag = lib.maps["torus_diagonal"]
P = lib.complexes["torus_product"]
print(f"torus diagonal swap: dividing={dividing_test(P, diag).dividing} "
      "(one complement component)")

print()
print("== Orientations modulo a moving curve ==")
tmarks = lib.cycles["torus_grid"]
def curve(*names):
    out = []
    for n in names:
        out += [tuple(s) for s in tmarks[n]]
    return out
Y1 = curve("col0", "col2")
Y2 = curve("col1", "col3")
out = compare_mod_curves(K, Y1, Y2,
                         flip_semiorientation(K, Y1), flip_semiorientation(K, Y2))
print(f"two parallel circle pairs split the torus: agree on "
      f"{len(out['agree_part'])} triangles, disagree on "
      f"{len(out['disagree_part'])}, matching the bounding parts "
      f"{sorted(len(p) for p in out['parts'])}")
