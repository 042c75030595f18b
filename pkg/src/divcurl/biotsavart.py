"""
Direct Biot-Savart-Laplace evaluation and the circulation diagnostic.

`biot_savart_eval` computes

    v(x) = -(1/4 pi) * integral over the shell of (x - y) x f(y) / |x - y|^3

by applying the tensor-product quadrature of the sampled source field,
with f extended by zero inside the sphere and beyond its support.  It is
deliberately independent of the spherical-harmonic machinery, which makes
it a cross-check for the spectral exterior solver: for compatible data
the two must produce the same field.

`circulation_diagnostic` evaluates the circulation pair

    surface integral of n x v over |x| = R   and   volume integral of f.

For the Biot-Savart field of any compactly supported f the surface side
equals exactly two thirds of the volume side at every R beyond the
support: curl v is f plus the gradient of the Newtonian potential of
div f, and the dipole term of that potential feeds the sphere integral
the remaining third.  Divergence-free data with vanishing normal trace
has zero mean identically (f_j = div(x_j f)), so for solvable sources
both sides vanish and no orthogonality-to-constants condition is ever
needed.  The diagnostic returns the raw pair so a caller can watch the
relation hold as R grows.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .frames import sph_to_cart_points, sph_to_cart_vector

__all__ = ["biot_savart_eval", "circulation_diagnostic", "sphere_points",
           "ProximityError"]


class ProximityError(ValueError):
    """An evaluation point sits too close to a source quadrature node."""


############################################
# Source-side geometry


def _source_arrays(field):
    """
    Flatten a SampledField into quadrature-ready source data.

    Returns (pts, fc, w, spacing): Cartesian node positions (M, 3), the
    Cartesian field values (M, 3), the volume quadrature weights
    w_r r^2 w_ct w_phi (M,), and the local grid spacing per node (M,)
    used by the proximity check.
    """
    rad, ang = field.radial, field.angular
    r = rad.r
    theta = ang.theta
    phi = ang.phi
    R, T, P = np.meshgrid(r, theta, phi, indexing="ij")
    pts = sph_to_cart_points(R, T, P).reshape(-1, 3)

    vr = field.values[..., 0]
    vt = field.values[..., 1]
    vp = field.values[..., 2]
    fc = sph_to_cart_vector(vr, vt, vp, T, P).reshape(-1, 3)

    w = (rad.w * r ** 2)[:, None, None] * ang.w_ct[None, :, None] \
        * ang.w_phi
    w = np.broadcast_to(w, R.shape).reshape(-1)

    # local spacing: nearest radial neighbour and the angular arc lengths
    dr = np.empty_like(r)
    dr[:-1] = np.diff(r)
    dr[-1] = dr[-2]
    dr[1:] = np.minimum(dr[1:], np.diff(r))
    dtheta = np.empty_like(theta)
    dtheta[:-1] = np.diff(theta)
    dtheta[-1] = dtheta[-2]
    dtheta[1:] = np.minimum(dtheta[1:], np.diff(theta))
    st = np.abs(np.sin(theta))
    dphi = 2.0 * np.pi / ang.n_phi
    spacing = np.minimum(
        dr[:, None, None],
        np.minimum(R * dtheta[None, :, None], R * st[None, :, None] * dphi))
    return pts, fc, np.asarray(w), spacing.reshape(-1)


def biot_savart_eval(field, pts, chunk=4096, threads=1):
    """
    Evaluate the Biot-Savart-Laplace integral of a sampled source field.

    Parameters
    ----------
    field: SampledField
        source f in spherical-frame components on the tensor grid
    pts: (N, 3) array
        Cartesian evaluation points; each must keep a distance of at
        least half the local grid spacing from every source node that
        carries a nonzero value (nodes where f vanishes contribute
        nothing, so only strict separation is required there), and lie
        strictly outside the inner sphere
    chunk: int
        number of source nodes per vectorized block
    threads: int
        worker threads over evaluation points; each point's sum is
        computed whole by one worker, so the result is bitwise identical
        for every thread count

    Returns
    -------
    (N, 3) complex array of Cartesian field values
        v(x) = -(1/4 pi) * sum of w_i (x - y_i) x f_i / |x - y_i|^3.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"pts must be (N, 3), got {pts.shape}")
    r0 = field.radial.r0
    rr = np.linalg.norm(pts, axis=1)
    if np.any(rr <= r0):
        bad = pts[rr <= r0][0]
        raise ProximityError(
            f"evaluation point {bad} lies inside the sphere r0 = {r0:g}")
    src, fc, w, spacing = _source_arrays(field)
    wf = w[:, None] * fc
    live = np.abs(fc).max(axis=1) > 0.0

    def accumulate(block):
        out = np.zeros((block.shape[0], 3), dtype=complex)
        for lo in range(0, src.shape[0], chunk):
            sl = slice(lo, lo + chunk)
            diff = block[:, None, :] - src[None, sl, :]      # (N, M, 3)
            dist = np.sqrt((diff ** 2).sum(axis=2))
            near = dist < np.where(live[sl], 0.5 * spacing[sl], 0.0)[None, :]
            coincident = dist == 0.0
            if np.any(near) or np.any(coincident):
                i, j = np.argwhere(near | coincident)[0]
                raise ProximityError(
                    f"evaluation point {block[i]} is {dist[i, j]:.3g} from a "
                    f"source node (minimum {0.5 * spacing[sl][j]:.3g})")
            out += np.cross(diff, wf[sl][None, :, :]
                            / dist[:, :, None] ** 3).sum(axis=1)
        return out

    threads = max(1, int(threads))
    if threads == 1 or pts.shape[0] < 2:
        return accumulate(pts) / (-4.0 * np.pi)
    splits = np.array_split(np.arange(pts.shape[0]), min(threads, pts.shape[0]))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda ix: accumulate(pts[ix]), splits))
    return np.concatenate(parts, axis=0) / (-4.0 * np.pi)


############################################
# Circulation at infinity


def sphere_points(angular, R):
    """Cartesian points of an angular grid placed on the sphere |x| = R."""
    T, P = np.meshgrid(angular.theta, angular.phi, indexing="ij")
    return sph_to_cart_points(np.full_like(T, float(R)), T, P).reshape(-1, 3)


def circulation_diagnostic(v_sphere, angular, R, field):
    """
    Both sides of the circulation identity on the sphere |x| = R.

    Parameters
    ----------
    v_sphere: (n_theta, n_phi, 3) or (n_theta * n_phi, 3) complex array
        Cartesian field values on the sphere_points of `angular` at
        radius R (typically from biot_savart_eval)
    angular: AngularGrid
    R: float
        sphere radius, beyond the outer grid radius of the source
    field: SampledField
        the source f

    Returns
    -------
    (surface, volume): pair of Cartesian complex 3-vectors
        surface = integral of n x v over the sphere, volume = integral
        of f over the shell.  When v is the Biot-Savart field of f the
        surface side is exactly two thirds of the volume side for every
        enclosing R (and both vanish for zero-mean sources); the caller
        compares them.
    """
    v = np.asarray(v_sphere, dtype=complex)
    v = v.reshape(angular.n_theta, angular.n_phi, 3)
    T, P = np.meshgrid(angular.theta, angular.phi, indexing="ij")
    n = sph_to_cart_points(np.ones_like(T), T, P)
    integrand = np.cross(n, v)
    w = angular.w_ct[:, None] * angular.w_phi
    surface = R ** 2 * np.einsum("tp,tpc->c", w, integrand)

    _, fc, wv, _ = _source_arrays(field)
    volume = wv @ fc
    return surface, volume
