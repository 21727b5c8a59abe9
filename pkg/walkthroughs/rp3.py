"""The 11- and 12-vertex RP^3 triangulations and their equilibrium zones."""

from smallcovers.lift import equilibrium_check
from smallcovers.simplicial import integral_homology, orientable, verify_closed_manifold
from smallcovers.threefolds import rp3_tri


def _h(X):
    H = integral_homology(X)
    return ", ".join(f"H{k}={H.describe(k)}" for k in range(len(H.integral)))

for variant in (12, 11):
    b = rp3_tri(variant)
    X = b.complex
    print(f"rp3_tri({variant}): f = {X.f_vector()}")
    print("  manifold", verify_closed_manifold(X).certificate, "orientable", orientable(X))
    print("  homology", _h(X))
    print("  equilibrium", equilibrium_check(X, b.zones, b.equilibrium, 3).ok)
