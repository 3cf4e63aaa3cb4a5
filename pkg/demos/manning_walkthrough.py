"""Everything the library knows about the presentation <a, b, c | b^2 a^2 c^2 a b c>.

Run with ``python demos/manning_walkthrough.py``.
"""
from fractions import Fraction
from importlib.resources import files

from twocurv import curvature as K
from twocurv import enumeration as E
from twocurv import links, words
from twocurv.core import average_curvature, euler_characteristic
from twocurv.io import load_complex
from twocurv.reduce import classify

X = load_complex(files("twocurv") / "data" / "manning.txt")
print("one vertex, three edges, one face of length", len(X.faces[0]))
print("Euler characteristic", euler_characteristic(X), "and average curvature", average_curvature(X))
print("classification:", classify(X))

(L,) = links.all_links(X)
print(f"\nThe link has {len(L.nodes)} nodes, {len(L.edges)} edges and girth {links.girth(L)}.")
print("Giving each corner the angle 2/girth (in units of pi) makes every link cycle at least 2:")
A = K.girth_angles(X)
print("  face curvature", K.face_curvature(X, A, 0), "so sigma_plus <=", K.sigma_upper_bound_girth(X))

print("\nWith 5/9 at every corner instead, no section of the link is positively curved:")
A = K.AngleStructure.uniform(X, Fraction(5, 9))
best, section = K.best_section(L, A)
print(f"  most curved section has {len(section.nodes)} nodes and curvature {best}")
print("  so rho_plus <=", K.rho_upper_bound_sectional(X, A))

print("\nThe identity map is a witness of curvature -1, so the bound is attained:")
r = E.curvature_report(X, E.Budget(1))
print(f"  rho_plus in [{r.rho_plus.lower}, {r.rho_plus.upper}], exact: {r.rho_plus.exact}")

w = words.from_string("bbaaccabc")
p = E.primitivity_rank(w, 3)
print("\nPrimitivity rank of the relator:", p.value)
interval = E.stable_primitivity_bounds(w, 3)
print(f"Stable primitivity rank in [{interval.lower}, {interval.upper}]")
