"""RP^n with 2^n + n + 1 vertices for small n."""

import sys

from smallcovers.projective import rpn_tri
from smallcovers.simplicial import betti_mod2, verify_closed_manifold

top = int(sys.argv[1]) if len(sys.argv) > 1 else 4
for n in range(1, top + 1):
    b = rpn_tri(n)
    X = b.complex
    print(f"RP^{n}: f = {X.f_vector()}, mod 2 Betti {betti_mod2(X)}, "
          f"certificate {verify_closed_manifold(X).certificate}")
