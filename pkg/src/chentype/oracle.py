"""Finite-difference reference values for the Beltrami operators.

The oracle never touches the symbolic operator: it samples the input field
on a 5x5 grid of chart points, takes nested central differences, and applies
the divergence formula with the square root of the determinant written out.
Surface geometry comes from jets of the position (with a normal built from
x_u x x_phi), evaluated at the grid offsets.
"""

from __future__ import annotations

import numpy as np

from .frames import AmbientVec, FrameVec
from .geometry import SurfaceChart
from .numeric import PointJets, chart_profile
from .symexpr import canonicalize
from .symexpr.profile import NumericProfile

FD_STEP = 1e-4
GEOMETRY_ORDER = 8


def _is_zero_int(c) -> bool:
    return isinstance(c, int) and c == 0


class FiniteDifferenceOracle:
    """Numeric evaluation of fields and operators near one chart point.

    With ``richardson`` set, each operator is evaluated at steps h and h/2 and
    the two second-order results are combined to cancel the h^2 error term.
    """

    def __init__(self, chart: SurfaceChart, profile: NumericProfile | None = None, which: str = "II",
                 h: float = FD_STEP, frame0=None, spine0=None, richardson: bool = True):
        self.chart = chart
        self.profile = profile if profile is not None else chart_profile(chart)
        self.which = which
        self.h = h
        self.richardson = richardson
        self.point = PointJets(chart, self.profile, GEOMETRY_ORDER, frame0, spine0, numeric_normal=True)
        self.form_jets = self.point.form(which)

    # -- sampling ------------------------------------------------------------
    def field_at(self, f, a: int = 0, b: int = 0, h: float | None = None):
        """Value of a scalar or vector field at grid offset (a, b), ambient coordinates."""
        h = self.h if h is None else h
        du, dp = a * h, b * h
        prof = self.profile.at(self.profile.u + du, self.profile.phi + dp)
        if isinstance(f, AmbientVec):
            return np.array([0.0 if _is_zero_int(c) else canonicalize(c).eval(prof) for c in f.components])
        if isinstance(f, FrameVec):
            out = np.zeros(3)
            for c, basis in zip(f.components, self.point.frame):
                if _is_zero_int(c):
                    continue
                e = np.array([x.at(du, 0.0) for x in basis])
                out += canonicalize(c).eval(prof) * e
            if f.spine:
                out += f.spine * np.array([x.at(du, 0.0) for x in self.point.spine])
            return out
        return np.asarray(canonicalize(f).eval(prof))

    def weights(self, a: int = 0, b: int = 0, h: float | None = None):
        """sqrt|det J| and sqrt|det J| * J^{ij} at a grid offset."""
        h = self.h if h is None else h
        du, dp = a * h, b * h
        g11, g12, g22 = (g.at(du, dp) for g in self.form_jets)
        det = g11 * g22 - g12 * g12
        root = np.sqrt(abs(det))
        return root, (root * g22 / det, -root * g12 / det, root * g11 / det)

    def _extrapolate(self, fn, *args):
        if not self.richardson:
            return fn(self.h, *args)
        coarse = fn(self.h, *args)
        fine = fn(self.h / 2, *args)
        return (4 * fine - coarse) / 3

    def _grads(self, f, a, b, cache, h):
        def val(i, j):
            key = (i, j)
            if key not in cache:
                cache[key] = self.field_at(f, i, j, h)
            return cache[key]

        h2 = 2 * h
        fu = (val(a + 1, b) - val(a - 1, b)) / h2
        fp = (val(a, b + 1) - val(a, b - 1)) / h2
        return fu, fp

    # -- operators -------------------------------------------------------------
    def laplacian(self, f):
        """-(1/sqrt|J|) d_j (sqrt|J| J^{ij} f_i) at the centre point."""
        return self._extrapolate(self._laplacian, f)

    def _laplacian(self, h, f):
        cache: dict = {}
        flux = {}
        for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            fu, fp = self._grads(f, a, b, cache, h)
            _, (w11, w12, w22) = self.weights(a, b, h)
            flux[(a, b)] = (w11 * fu + w12 * fp, w12 * fu + w22 * fp)
        h2 = 2 * h
        div = (flux[(1, 0)][0] - flux[(-1, 0)][0]) / h2 + (flux[(0, 1)][1] - flux[(0, -1)][1]) / h2
        root, _ = self.weights(0, 0)
        return -div / root

    def first_beltrami(self, f, g):
        """J^{ij} f_i g_j at the centre point."""
        return self._extrapolate(self._first, f, g)

    def _first(self, h, f, g):
        fu, fp = self._grads(f, 0, 0, {}, h)
        gu, gp = self._grads(g, 0, 0, {}, h)
        root, (w11, w12, w22) = self.weights(0, 0)
        i11, i12, i22 = w11 / root, w12 / root, w22 / root
        return (i11 * fu + i12 * fp) * gu + (i12 * fu + i22 * fp) * gp

    def value(self, f):
        return self.field_at(f, 0, 0)

    def frame_components(self, ambient) -> np.ndarray:
        return self.point.frame_values() @ np.asarray(ambient, dtype=float)


def relative_error(computed, reference) -> float:
    computed = np.atleast_1d(np.asarray(computed, dtype=float))
    reference = np.atleast_1d(np.asarray(reference, dtype=float))
    scale = max(np.max(np.abs(reference)), 1e-300)
    return float(np.max(np.abs(computed - reference)) / scale)
