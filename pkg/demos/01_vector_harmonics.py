"""
Vector spherical harmonics: the basis, its norms, and the conventions.

Three families span vector fields on the sphere: Y_lm rhat (radial),
Psi_lm = r grad Y_lm and Phi_lm = r x grad Y_lm (tangential).  With fully
normalized scalar harmonics the surface inner products are 1 for the
radial family and l(l+1) for both tangential ones, and the families are
mutually orthogonal.
"""

import numpy as np

from divcurl.grids import AngularGrid, surface_integral
from divcurl.harmonics import scalar_Y, vsh_eval

############################################
# A scalar harmonic at a point, against the closed form

theta, phi = np.pi / 3, np.pi / 4
y21 = scalar_Y(2, 1, theta, phi)
closed = -np.sqrt(15.0 / (8.0 * np.pi)) * np.sin(theta) * np.cos(theta) \
    * np.exp(1j * phi)
print("Y_2^1(pi/3, pi/4)      =", y21)
print("closed form            =", closed)

############################################
# Surface gram matrix of a small band

ang = AngularGrid(8, 15)            # Gauss-Legendre x uniform, exact to l=7
T, P = np.meshgrid(ang.theta, ang.phi, indexing="ij")

members = []
labels = []
for kind in ("Y", "Psi", "Phi"):
    for l in range(4):
        if l == 0 and kind != "Y":
            continue
        for m in range(-l, l + 1):
            comps = vsh_eval(kind, l, m, T, P)
            members.append(np.stack(
                [np.broadcast_to(np.asarray(c, dtype=complex), T.shape)
                 for c in comps], axis=-1))
            labels.append((kind, l, m))

n = len(members)
gram = np.empty((n, n), dtype=complex)
for a in range(n):
    for b in range(n):
        dens = (members[a] * np.conj(members[b])).sum(axis=-1)
        gram[a, b] = surface_integral(ang, dens)

want = np.diag([1.0 if k == "Y" else l * (l + 1.0) for k, l, m in labels])
print("\nbasis members          =", n)
print("max |gram - expected|  = %.3e" % np.abs(gram - want).max())

############################################
# The uniform field zhat in this basis

# zhat = cos(theta) rhat - sin(theta) thetahat picks up the single mode
# (1, 0) in both the Y and Psi channels, with coefficient sqrt(4 pi / 3).
zhat = np.zeros(T.shape + (3,), dtype=complex)
zhat[..., 0] = np.cos(T)
zhat[..., 1] = -np.sin(T)

for kind in ("Y", "Psi"):
    comps = vsh_eval(kind, 1, 0, T, P)
    member = np.stack([np.broadcast_to(np.asarray(c, dtype=complex), T.shape)
                       for c in comps], axis=-1)
    norm = 1.0 if kind == "Y" else 2.0
    coef = surface_integral(ang, (zhat * np.conj(member)).sum(axis=-1)) / norm
    print("zhat coefficient in %-3s = %.15f  (sqrt(4 pi / 3) = %.15f)"
          % (kind, coef.real, np.sqrt(4.0 * np.pi / 3.0)))
