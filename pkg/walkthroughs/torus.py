"""Equivariant 12-vertex torus over the square, then a lift of the same beta."""

from smallcovers.charfn import parse_beta_arg
from smallcovers.lift import barycentric_lift, is_equivariant, project_check
from smallcovers.simplicial import betti_mod2, integral_homology
from smallcovers.surfaces import audit_lower_bound, surface_2m4


def _h(X):
    H = integral_homology(X)
    return ", ".join(f"H{k}={H.describe(k)}" for k in range(len(H.integral)))

beta = parse_beta_arg("10,01,10,01")
b = surface_2m4(4, beta)
X = b.complex
print("f-vector", X.f_vector(), "chi", X.euler_characteristic())
print("mod 2 Betti", betti_mod2(X))
print("integral homology", _h(X))
print("equivariant", is_equivariant(X, b.action))
print("projection ok", project_check(X, b.action, b.polytope, b.projection).ok)
print("lower bound", audit_lower_bound(b))

L = barycentric_lift(b.polytope, beta)
print("barycentric lift: vertices", L.vertex_count(), "f-vector", L.f_vector())
