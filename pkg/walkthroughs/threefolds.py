"""The three 3-manifold targets over the prism."""

from smallcovers.simplicial import integral_homology, orientable
from smallcovers.threefolds import build_target


def _h(X):
    H = integral_homology(X)
    return ", ".join(f"H{k}={H.describe(k)}" for k in range(len(H.integral)))

for name in ("n1", "n2", "n3"):
    b = build_target(name)
    X = b.complex
    print(name, X.f_vector(), "orientable" if orientable(X) else "non-orientable",
          _h(X))
