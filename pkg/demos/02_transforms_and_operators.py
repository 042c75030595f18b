"""
Analysis/synthesis between samples and coefficients, and the spectral
differential operators.

A vector field on the spherical shell [r0, rmax] is carried either as
samples on a (r, theta, phi) tensor grid or as per-mode radial profiles
(c_r, c_1, c_2) against (Y, Psi, Phi).  The two representations round-trip
through analyze/synthesize, and div, grad, curl act mode by mode on the
profiles.
"""

import numpy as np

from divcurl.grids import make_grids
from divcurl.transform import (ScalarSpectral, SpectralField, analyze,
                               spectral_curl, spectral_div, spectral_grad,
                               synthesize)

rng = np.random.default_rng(0)
ang, rad = make_grids(1.0, 5.0, 64, 6)
print("angular grid          : %d x %d nodes" % (ang.n_theta, ang.n_phi))
print("radial grid           : %s" % (rad,))

############################################
# Round trip: coefficients -> samples -> coefficients

S = SpectralField(rad, 6)
bump = np.exp(-((rad.r - 3.0) / 0.9) ** 2)
scal = (rng.standard_normal((S.n_modes, 3))
        + 1j * rng.standard_normal((S.n_modes, 3)))
S.coeffs[:] = scal[:, :, None] * bump[None, None, :]
S.coeffs[0, 1:] = 0.0          # l = 0 has no tangential channels

field = synthesize(S, ang)
R = analyze(field, 6)
print("round-trip error      : %.3e"
      % (np.abs(R.coeffs - S.coeffs).max() / np.abs(S.coeffs).max()))

############################################
# div(curl) = 0 and curl(grad) = 0 in the discrete calculus

dc = spectral_div(spectral_curl(S))
print("max |div(curl W)|     : %.3e" % np.abs(dc.coeffs).max())

s = ScalarSpectral(rad, 6)
s.coeffs[:] = (rng.standard_normal(s.coeffs.shape)
               + 1j * rng.standard_normal(s.coeffs.shape)) * bump
cg = spectral_curl(spectral_grad(s))
print("max |curl(grad psi)|  : %.3e" % np.abs(cg.coeffs).max())

############################################
# The curl of a decaying tangential profile, channel by channel

# For W = g(r) Phi_lm the curl has the closed form
#   curl W = -l(l+1) g/r Y_lm - (r g)'/r Psi_lm
from divcurl.transform import mode_index

l, m = 2, 1
g = rad.r ** -4.0
W = SpectralField(rad, 6)
W.coeffs[mode_index(l, m), 2] = g

C = spectral_curl(W)
prof = C.mode(l, m)
want_Y = -l * (l + 1.0) * g / rad.r
want_Psi = -rad.differentiate(rad.r * g) / rad.r
print("curl Y-channel error  : %.3e" % np.abs(prof[0] - want_Y).max())
print("curl Psi-channel error: %.3e" % np.abs(prof[1] - want_Psi).max())
print("curl Phi-channel      : %.3e  (identically zero)"
      % np.abs(prof[2]).max())
