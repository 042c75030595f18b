"""
Text file formats for sampled fields, spectral coefficients, evaluation
points, and planar scalar data.

All formats are UTF-8 text with full double precision (%.17g), so files
round-trip bit-for-bit and diff cleanly.  Readers rebuild the grids from
the header plus the recorded nodes: the radial nodes are recognized as
composite Gauss-Legendre panels (the panel layout is recovered by fitting
affine images of the standard nodes), so any panel structure a writer
used survives the trip through a file.

Formats
-------
.vfld   sampled vector field on the (r, theta, phi) tensor grid::

            vfld 1
            r0 <v>
            rmax <v>
            nr <n>
            ntheta <n>
            nphi <n>
            r theta phi vr_re vr_im vt_re vt_im vp_re vp_im      (one row
            per node, lexicographic in (r, theta, phi))

.vshc   spectral coefficients::

            vshc 1
            r0 <v>
            rmax <v>
            nr <n>
            lmax <L>
            <nr radial nodes on one line>
            <l> <m> <channel> re_1 im_1 ... re_nr im_nr          (channel
            in {r, psi, phi}; l ascending, m ascending, channels in that
            order)

points  one evaluation point per row: ``x y z`` (blank lines ignored).

.pfld   planar scalar samples on a polar tensor grid::

            pfld 1
            kind <disk|exterior|annulus>
            r0 <v>
            r1 <v>           (annulus only)
            rsup <v>         (exterior only)
            nrho <n>
            nphi <n>
            rho phi re im                                        (one row
            per node, lexicographic in (rho, phi))

Malformed input raises FileFormatError whose message carries the path and
1-based line number of the offending line.
"""

import numpy as np

from .grids import AngularGrid, RadialGrid, SampledField
from .planar import PlanarGeometry, PolarGrid
from .transform import SpectralField, mode_index

__all__ = ["FileFormatError", "read_vfld", "write_vfld", "read_vshc",
           "write_vshc", "read_points", "write_points",
           "read_polar", "write_polar", "write_eval_table"]

CHANNELS = ("r", "psi", "phi")


class FileFormatError(ValueError):
    """A data file violates its format; the message names path and line."""


def _fmt(x):
    return "%.17g" % x


def _dump(text, out):
    """Write text to a path or to an already-open file object."""
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(path, lineno, message):
    raise FileFormatError("%s: line %d: %s" % (path, lineno, message))


class _Lines:
    """Sequential reader over the nonblank lines of a text file."""

    def __init__(self, path):
        self.path = path
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read().split("\n")
        self.rows = [(i + 1, s.split()) for i, s in enumerate(raw) if s.strip()]
        self.at = 0

    def next(self, what):
        if self.at >= len(self.rows):
            _fail(self.path, len(self.rows) + 1,
                  "unexpected end of file, expected %s" % what)
        row = self.rows[self.at]
        self.at += 1
        return row

    def done(self):
        if self.at < len(self.rows):
            lineno, _ = self.rows[self.at]
            _fail(self.path, lineno, "trailing data past the expected %d rows"
                  % self.at)

    def keyword(self, key):
        """Consume a `key value` line and return the value token."""
        lineno, toks = self.next("'%s <value>'" % key)
        if len(toks) != 2 or toks[0] != key:
            _fail(self.path, lineno, "expected '%s <value>', got %r"
                  % (key, " ".join(toks)))
        return lineno, toks[1]

    def keyfloat(self, key):
        lineno, tok = self.keyword(key)
        try:
            return float(tok)
        except ValueError:
            _fail(self.path, lineno, "%s is not a number: %r" % (key, tok))

    def keyint(self, key):
        lineno, tok = self.keyword(key)
        try:
            return int(tok)
        except ValueError:
            _fail(self.path, lineno, "%s is not an integer: %r" % (key, tok))

    def floats(self, count, what):
        lineno, toks = self.next(what)
        if len(toks) != count:
            _fail(self.path, lineno, "expected %d numbers (%s), got %d"
                  % (count, what, len(toks)))
        try:
            return lineno, [float(t) for t in toks]
        except ValueError:
            _fail(self.path, lineno, "non-numeric entry in %s row" % what)


def _magic(lines, tag):
    lineno, toks = lines.next("'%s 1' header" % tag)
    if toks != [tag, "1"]:
        _fail(lines.path, lineno, "expected '%s 1' header, got %r"
              % (tag, " ".join(toks)))


############################################
# Radial panel recognition


def radial_from_nodes(r0, rmax, nodes, path="<nodes>", lineno=0):
    """
    Rebuild the RadialGrid whose nodes are the given array.

    The nodes of a composite Gauss-Legendre rule are affine images of the
    standard nodes, one block per panel.  For each divisor p of the node
    count (largest first, so the coarsest consistent panel layout wins)
    the array is cut into blocks of p, an affine map is fitted to every
    block from its end nodes, and the fit is accepted when all p nodes
    match and the implied panels tile [r0, rmax] exactly.

    Raises FileFormatError when no panel layout reproduces the nodes.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    scale = max(abs(r0), abs(rmax), 1.0)
    tol = 1e-9 * scale
    for p in range(n, 1, -1):
        if n % p:
            continue
        xi = np.polynomial.legendre.leggauss(p)[0]
        blocks = nodes.reshape(n // p, p)
        half = (blocks[:, -1] - blocks[:, 0]) / (xi[-1] - xi[0])
        mid = 0.5 * (blocks[:, 0] + blocks[:, -1])
        fitted = mid[:, None] + half[:, None] * xi[None, :]
        if np.abs(fitted - blocks).max() > tol:
            continue
        lo, hi = mid - half, mid + half
        if abs(lo[0] - r0) > tol or abs(hi[-1] - rmax) > tol:
            continue
        if n // p > 1 and np.abs(hi[:-1] - lo[1:]).max() > tol:
            continue
        breakpoints = np.concatenate([[r0], 0.5 * (hi[:-1] + lo[1:]), [rmax]])
        grid = RadialGrid(breakpoints, p)
        if np.abs(grid.r - nodes).max() <= tol:
            return grid
    _fail(path, lineno, "radial nodes are not a recognizable composite "
          "Gauss-Legendre rule on [%g, %g]" % (r0, rmax))


############################################
# Sampled vector fields (.vfld)


def write_vfld(path, field):
    """
    Write a SampledField to a .vfld text file.

    Rows hold the spherical-frame components at every (r, theta, phi)
    node in lexicographic order, real and imaginary parts separately.
    """
    rad, ang, v = field.radial, field.angular, field.values
    out = ["vfld 1",
           "r0 %s" % _fmt(rad.r0),
           "rmax %s" % _fmt(rad.rmax),
           "nr %d" % rad.n_r,
           "ntheta %d" % ang.n_theta,
           "nphi %d" % ang.n_phi]
    for i in range(rad.n_r):
        for j in range(ang.n_theta):
            head = (_fmt(rad.r[i]), _fmt(ang.theta[j]))
            for k in range(ang.n_phi):
                row = head + (_fmt(ang.phi[k]),)
                for c in range(3):
                    z = complex(v[i, j, k, c])
                    row += (_fmt(z.real), _fmt(z.imag))
                out.append(" ".join(row))
    _dump("\n".join(out) + "\n", path)


def read_vfld(path):
    """
    Read a .vfld file back into a SampledField.

    The radial grid (panel layout included) is reconstructed from the
    recorded nodes; the angular grid follows from (ntheta, nphi).  Node
    coordinates in the rows are checked against the rebuilt grids, so a
    file edited out of shape fails with a pointed diagnostic.
    """
    lines = _Lines(path)
    _magic(lines, "vfld")
    r0 = lines.keyfloat("r0")
    rmax = lines.keyfloat("rmax")
    n_r = lines.keyint("nr")
    n_theta = lines.keyint("ntheta")
    n_phi = lines.keyint("nphi")
    if n_r < 1 or n_theta < 1 or n_phi < 1:
        _fail(path, lines.rows[lines.at - 1][0], "grid sizes must be positive")

    rows = np.empty((n_r * n_theta * n_phi, 9))
    linenos = np.empty(rows.shape[0], dtype=int)
    for i in range(rows.shape[0]):
        linenos[i], vals = lines.floats(9, "field")
        rows[i] = vals
    lines.done()

    r_nodes = rows[::n_theta * n_phi, 0]
    radial = radial_from_nodes(r0, rmax, r_nodes, path, linenos[0])
    angular = AngularGrid(n_theta, n_phi)
    want = np.stack([
        np.repeat(radial.r, n_theta * n_phi),
        np.tile(np.repeat(angular.theta, n_phi), n_r),
        np.tile(angular.phi, n_r * n_theta)], axis=1)
    err = np.abs(rows[:, :3] - want).max(axis=1)
    bad = int(np.argmax(err))
    if err[bad] > 1e-9 * max(rmax, 1.0):
        _fail(path, int(linenos[bad]), "node coordinates do not match the "
              "grid declared by the header")
    v = (rows[:, 3::2] + 1j * rows[:, 4::2]).reshape(n_r, n_theta, n_phi, 3)
    return SampledField(radial, angular, v)


############################################
# Spectral coefficients (.vshc)


def write_vshc(path, S):
    """
    Write a SpectralField to a .vshc text file.

    One line per (l, m, channel) in deterministic order: l ascending,
    m ascending within l, channels r / psi / phi.
    """
    rad = S.radial
    out = ["vshc 1",
           "r0 %s" % _fmt(rad.r0),
           "rmax %s" % _fmt(rad.rmax),
           "nr %d" % rad.n_r,
           "lmax %d" % S.L_max,
           " ".join(_fmt(x) for x in rad.r)]
    for l in range(S.L_max + 1):
        for m in range(-l, l + 1):
            prof = S.mode(l, m)
            for c, name in enumerate(CHANNELS):
                row = ["%d %d %s" % (l, m, name)]
                row += ["%s %s" % (_fmt(z.real), _fmt(z.imag))
                        for z in prof[c]]
                out.append(" ".join(row))
    _dump("\n".join(out) + "\n", path)


def read_vshc(path):
    """
    Read a .vshc file back into a SpectralField.

    Enforces the declared ordering, the |m| <= l index structure, and the
    l = 0 convention (psi and phi channels identically zero).
    """
    lines = _Lines(path)
    _magic(lines, "vshc")
    r0 = lines.keyfloat("r0")
    rmax = lines.keyfloat("rmax")
    n_r = lines.keyint("nr")
    L_max = lines.keyint("lmax")
    if n_r < 1 or L_max < 0:
        _fail(path, lines.rows[lines.at - 1][0],
              "nr must be positive and lmax nonnegative")
    node_lineno, nodes = lines.floats(n_r, "radial nodes")
    radial = radial_from_nodes(r0, rmax, nodes, path, node_lineno)

    S = SpectralField(radial, L_max)
    for l in range(L_max + 1):
        for m in range(-l, l + 1):
            for c, name in enumerate(CHANNELS):
                what = "coefficients for mode (%d, %d) channel %s" % (l, m, name)
                lineno, toks = lines.next(what)
                if (len(toks) != 3 + 2 * n_r or toks[0] != str(l)
                        or toks[1] != str(m) or toks[2] != name):
                    _fail(path, lineno, "expected '%d %d %s' plus %d numbers"
                          % (l, m, name, 2 * n_r))
                try:
                    vals = np.array([float(t) for t in toks[3:]])
                except ValueError:
                    _fail(path, lineno, "non-numeric entry in %s" % what)
                prof = vals[::2] + 1j * vals[1::2]
                if l == 0 and c > 0 and np.any(prof != 0.0):
                    _fail(path, lineno, "l = 0 has no %s channel; the "
                          "profile must be zero" % name)
                S.coeffs[mode_index(l, m), c] = prof
    lines.done()
    return S


############################################
# Evaluation points and tables


def read_points(path):
    """Read a text file of `x y z` rows into an (n, 3) float array."""
    lines = _Lines(path)
    pts = []
    while lines.at < len(lines.rows):
        _, vals = lines.floats(3, "point")
        pts.append(vals)
    return np.array(pts).reshape(len(pts), 3)


def write_points(path, pts):
    """Write an (n, 3) array as `x y z` rows."""
    rows = [" ".join(_fmt(x) for x in p) for p in np.asarray(pts, dtype=float)]
    _dump("".join(s + "\n" for s in rows), path)


def write_eval_table(path, pts, values):
    """
    Write point evaluations as rows `x y z vx_re vx_im vy_re vy_im
    vz_re vz_im`.
    """
    pts = np.asarray(pts, dtype=float)
    values = np.asarray(values, dtype=complex)
    out = []
    for p, v in zip(pts, values):
        row = [_fmt(x) for x in p]
        for z in v:
            row += [_fmt(z.real), _fmt(z.imag)]
        out.append(" ".join(row))
    _dump("\n".join(out) + "\n", path)


############################################
# Planar scalar samples (.pfld)


def write_polar(path, samples, grid, geom):
    """
    Write scalar samples on a PolarGrid, with the geometry, to a .pfld
    text file.  Rows run lexicographically in (rho, phi).
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != (grid.n_rho, grid.n_phi):
        raise ValueError("samples shape %r does not match the grid"
                         % (samples.shape,))
    out = ["pfld 1", "kind %s" % geom.kind, "r0 %s" % _fmt(geom.r0)]
    if geom.kind == "annulus":
        out.append("r1 %s" % _fmt(geom.r1))
    elif geom.kind == "exterior":
        out.append("rsup %s" % _fmt(geom.R_sup))
    out += ["nrho %d" % grid.n_rho, "nphi %d" % grid.n_phi]
    for i in range(grid.n_rho):
        for k in range(grid.n_phi):
            z = samples[i, k]
            out.append(" ".join((_fmt(grid.rho[i]), _fmt(grid.phi[k]),
                                 _fmt(z.real), _fmt(z.imag))))
    _dump("\n".join(out) + "\n", path)


def read_polar(path):
    """
    Read a .pfld file.

    Returns
    -------
    (samples, grid, geom)
        complex (n_rho, n_phi) samples, the rebuilt PolarGrid, and the
        PlanarGeometry from the header.
    """
    lines = _Lines(path)
    _magic(lines, "pfld")
    kind_lineno, kind = lines.keyword("kind")
    if kind not in ("disk", "exterior", "annulus"):
        _fail(path, kind_lineno, "kind must be disk, exterior, or annulus")
    r0 = lines.keyfloat("r0")
    if kind == "annulus":
        geom = PlanarGeometry(kind, r0, r1=lines.keyfloat("r1"))
    elif kind == "exterior":
        geom = PlanarGeometry(kind, r0, R_sup=lines.keyfloat("rsup"))
    else:
        geom = PlanarGeometry(kind, r0)
    n_rho = lines.keyint("nrho")
    n_phi = lines.keyint("nphi")
    if n_rho < 1 or n_phi < 1:
        _fail(path, lines.rows[lines.at - 1][0], "grid sizes must be positive")

    rows = np.empty((n_rho * n_phi, 4))
    linenos = np.empty(rows.shape[0], dtype=int)
    for i in range(rows.shape[0]):
        linenos[i], vals = lines.floats(4, "sample")
        rows[i] = vals
    lines.done()

    lo, hi = geom.domain()
    radial = radial_from_nodes(lo, hi, rows[::n_phi, 0], path, linenos[0])
    grid = PolarGrid(lo, hi, n_rho, n_phi,
                     breakpoints=radial.breakpoints,
                     nodes_per_panel=radial.nodes_per_panel)
    want = np.stack([np.repeat(grid.rho, n_phi),
                     np.tile(grid.phi, n_rho)], axis=1)
    err = np.abs(rows[:, :2] - want).max(axis=1)
    bad = int(np.argmax(err))
    if err[bad] > 1e-9 * max(hi, 1.0):
        _fail(path, int(linenos[bad]), "node coordinates do not match the "
              "grid declared by the header")
    samples = (rows[:, 2] + 1j * rows[:, 3]).reshape(n_rho, n_phi)
    return samples, grid, geom
