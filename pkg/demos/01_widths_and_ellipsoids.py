"""Widths of ellipsoids: s-numbers, the shift identity, sections, membership.

An ellipsoid is the image A(B) of the unit ball under a matrix A.  Its
Kolmogorov widths (best worst-case distance to an n-dimensional subspace)
are the singular values of A shifted by one index: d_n = s_{n+1}.
"""

import numpy as np

from widthlab import (
    ellipsoid,
    ellipsoid_membership,
    kolmogorov_widths,
    section_spectrum,
    singular_spectrum,
    truncate_ellipsoid,
)

rng = np.random.default_rng(1)

# A diagonal generator makes the geometry visible: semi-axes 3, 2, 1.
a = np.diag([3.0, 2.0, 1.0])
e = ellipsoid(a)
print("s-numbers:", e.spectrum.values)          # (3, 2, 1), 1-indexed s(1)=3
print("widths:   ", kolmogorov_widths(e).values)  # d_0=3, d_1=2, d_2=1, then 0

# The identity survives any change of orthonormal bases.
q1, _ = np.linalg.qr(rng.normal(size=(3, 3)))
q2, _ = np.linalg.qr(rng.normal(size=(3, 3)))
rotated = ellipsoid(q1 @ a @ q2)
print("rotated widths:", kolmogorov_widths(rotated).values)

# Cutting the ellipsoid with the hyperplane orthogonal to its longest axis
# removes exactly the top width: the section of diag(3,2,1) is diag(2,1).
y = np.array([[1.0, 0.0, 0.0]]).T
print("section spectrum:", section_spectrum(e, y).values)

# A generic 8-dimensional ellipsoid: sections by random 2-dim subspaces
# interlace the spectrum, s_{n+2} <= sigma_n <= s_n.
big = ellipsoid(rng.normal(size=(8, 8)))
y2 = np.linalg.qr(rng.normal(size=(8, 2)))[0]
sec = section_spectrum(big, y2)
print("\ninterlacing (n, s_{n+2}, sigma_n, s_n):")
for n in range(1, 4):
    print(f"  {n}: {big.spectrum.s(n + 2):.4f} <= {sec.s(n):.4f} <= {big.spectrum.s(n):.4f}")

# Truncation keeps the top directions; membership tests points against the
# minimum-norm preimage.
t = truncate_ellipsoid(big, 3)
print("\ntruncated spectrum:", np.round(t.spectrum.values, 4))
boundary = a @ np.array([1.0, 0.0, 0.0])
print("boundary point in ellipsoid:", ellipsoid_membership(e, boundary))
print("inflated point in ellipsoid:", ellipsoid_membership(e, 1.01 * boundary))

# singular_spectrum agrees with the eigenvalues of (A^T A)^(1/2).
m = rng.normal(size=(4, 4))
via_eig = np.sqrt(np.clip(np.linalg.eigvalsh(m.T @ m), 0, None))[::-1]
print("\nsvd route:", np.round(singular_spectrum(m).values, 6))
print("eig route:", np.round(via_eig, 6))
