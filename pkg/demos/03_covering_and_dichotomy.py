"""Covering one ellipsoid by another, and the dimension-tower dichotomy.

T K1 contains K2 exactly when A2 A2^T <= (T A1)(T A1)^T in the semidefinite
order, so every covering question here ends in an eigenvalue margin.  The
minimal-norm cover pairs up the singular bases; the constrained-cover
experiment shows how interpolation constraints cost nothing on slowly
decaying spectra and everything on lacunary ones.
"""

import numpy as np

from widthlab import (
    Geometric,
    SuperGeometric,
    classify_WCG,
    classify_WG,
    covers,
    ellipsoid,
    prescribed_cover,
    schmidt_cover,
    wot_density_experiment,
)

rng = np.random.default_rng(3)

# A covering certificate: the identity covers the ellipsoid by itself.
e1 = ellipsoid(np.diag([1.0, 0.5, 0.25]))
print("identity self-cover:", covers(np.eye(3), e1, e1))

# A contraction cannot cover: the PSD margin turns negative.
print("half-scale fails:   ", covers(0.5 * np.eye(3), e1, e1).psd_margin)

# Minimal-norm cover between two ellipsoids: the norm is the worst
# s-number ratio, here max(0.5/1, 0.125/0.5) = 1/2.
e2 = ellipsoid(np.diag([0.5, 0.125]))
d, c = schmidt_cover(e1, e2)
print("\nschmidt cover norm:", c)
print("covers:", covers(d, e1, e2).holds, " scaled by 0.999 covers:",
      covers(0.999 * d, e1, e2).holds)

# A cover that additionally interpolates prescribed values on a subspace:
# the price is a shrink factor rho of the truncated target.
e = ellipsoid(np.diag([0.5 ** n for n in range(8)]))
y = np.linalg.qr(rng.normal(size=(8, 2)))[0]
n = rng.normal(size=(8, 2))
d, rho = prescribed_cover(e, y, n)
print("\nprescribed cover: rho =", rho, " constraint residual =",
      float(np.abs(d @ y - n).max()))

# The dichotomy: geometric widths pay a fixed price q^m at every dimension;
# super-geometric widths collapse as the tower grows.
geo = wot_density_experiment(Geometric(0.5), m=2, dims=(8, 16, 32, 64), seed=7)
print("\ngeometric tower rho(d):", geo.rho)
sup = wot_density_experiment(SuperGeometric(2.0), m=1, dims=(4, 8, 16), seed=7)
print("super-geometric tower rho(d):", sup.rho)
print("collapse ratio rho(16)/rho(4):", sup.rho[2] / sup.rho[0])

# The same dichotomy, read off the width sequences directly.
print("\nclosure classifications:")
print("  WG(geom, geom):        ", classify_WG(Geometric(0.5), Geometric(0.5)).tag)
print("  WG(supergeom, itself): ", classify_WG(SuperGeometric(2.0), SuperGeometric(2.0)).tag)
print("  WCG(geom, geom(1/4)):  ", classify_WCG(Geometric(0.5), Geometric(0.25)).tag)
print("  WCG(geom, geom):       ", classify_WCG(Geometric(0.5), Geometric(0.5)).tag)
