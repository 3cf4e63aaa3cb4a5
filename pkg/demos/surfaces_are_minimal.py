"""Every small visibly irreducible complex mapping to a surface is a branched cover.

Lists the witnesses of area at most 4 over the sphere and the torus and shows
that each one covers its target, so all four curvature invariants collapse to
the target's own average curvature.
"""
from twocurv import corpus as C
from twocurv import enumeration as E
from twocurv.core import area
from twocurv.fold import is_branched_covering

for name, X in (("sphere", C.sphere()), ("torus", C.torus())):
    W = E.enumerate_witnesses(X, E.Budget(4))
    print(f"{name}: {len(W)} witnesses (search {'complete' if W.exhaustive else 'incomplete'})")
    degrees = {}
    for w in W:
        d = is_branched_covering(w.map)
        degrees.setdefault((area(w.complex), d, w.kappa), 0)
        degrees[(area(w.complex), d, w.kappa)] += 1
    for (a, d, k), count in sorted(degrees.items()):
        print(f"  area {a}: {count} covering(s) of degree {d}, kappa {k}")
    r = E.curvature_report(X, E.Budget(4))
    print("  rho_plus = rho_minus = sigma_plus = sigma_minus =", r.rho_plus.lower)
