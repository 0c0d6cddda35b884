"""Operator ranges: generating ellipsoids, two-sided scaling, weak fullness.

Different generators of one operator range produce ellipsoids squeezed
between scalar multiples of each other, so the range carries a well-defined
equivalence class of width sequences.  Whether the algebra preserving the
range is weakly full depends only on that class and the codimension of the
range closure.
"""

import math

import numpy as np

from widthlab import (
    Geometric,
    SuperGeometric,
    covers,
    ellipsoid,
    find_separating_projection,
    is_weakly_full,
    range_equiv,
    scale_ellipsoid,
)

rng = np.random.default_rng(4)

# Two generators with the same column space: the equivalence constants are
# the extreme generalized eigenvalues between the Gram forms.
a1 = rng.normal(size=(5, 3))
a2 = a1 @ rng.normal(size=(3, 3))
eq = range_equiv(a1, a2)
print("same range:", eq.same_range, " c =", round(eq.c, 6), " C =", round(eq.C, 6))

# Both inclusions c K1 <= K2 <= C K1 hold as covering certificates.
e1, e2 = ellipsoid(a1), ellipsoid(a2)
print("c K1 inside K2:", covers(np.eye(5), e2, scale_ellipsoid(e1, eq.c)).holds)
print("K2 inside C K1:", covers(np.eye(5), scale_ellipsoid(e1, eq.C), e2).holds)

# A pure rescaling gives c = C; distinct column spaces give no constants.
print("\nscaling only:", range_equiv(a1, 3 * a1))
print("rank mismatch:", range_equiv(np.diag([1.0, 0.0]), np.eye(2)))

# Weak fullness of the algebra preserving the range: three regimes.
print("\nweak fullness:")
print("  finite codimension:           ", is_weakly_full(Geometric(0.5), 0).weakly_full)
print("  non-lacunary, infinite codim: ", is_weakly_full(Geometric(0.5), math.inf).weakly_full)
print("  lacunary, infinite codim:     ", is_weakly_full(SuperGeometric(2.0), math.inf).weakly_full)

# Trace duality: a finite-rank projection keeping a family of operators
# independent makes U -> (trace(U P T_i))_i surjective.
t1 = np.zeros((3, 3)); t1[0, 0] = 1.0
t2 = np.zeros((3, 3)); t2[1, 1] = 1.0
t3 = rng.normal(size=(3, 3))
p = find_separating_projection([t1, t2, t3])
print("\nseparating projection rank:", int(round(np.trace(p))))
stacked = np.stack([(p @ t).reshape(-1) for t in (t1, t2, t3)])
print("projected family stays independent:", np.linalg.matrix_rank(stacked) == 3)
