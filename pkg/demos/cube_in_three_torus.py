"""The 2-skeleton of a cube sits inside the 3-torus complex and pins down sigma_plus.

The n-torus 2-skeleton has average curvature 1 - 2/n. When n = 3 its link is
the octahedron graph, of girth 3, which gives the upper bound 1/3 for surface
curvature. The cube surface (8 vertices, 12 edges, 6 squares) maps onto it by
reading edge directions and realises that value.
"""
from twocurv import corpus as C
from twocurv import curvature as K
from twocurv import enumeration as E
from twocurv.core import average_curvature
from twocurv.fold import is_branched_immersion, is_essential

for n in (3, 4, 5):
    print(f"{n}-torus 2-skeleton: kappa = {average_curvature(C.n_torus(n))}")

X = C.n_torus(3)
print("\ngirth bound for sigma_plus:", K.sigma_upper_bound_girth(X))

phi = C.cube_immersion()
print("cube -> 3-torus is a branched immersion:", is_branched_immersion(phi))
print("and it is essential:", is_essential(phi))
print("cube curvature:", average_curvature(phi.source))

r = E.curvature_report(X, E.Budget(1), extra_witnesses=[phi])
print("\nsigma_plus =", r.sigma_plus.lower, "exact:", r.sigma_plus.exact)
print("  lower bound from:", r.sigma_plus.lower_from)
print("  upper bound from:", r.sigma_plus.upper_from)
