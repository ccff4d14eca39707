"""Pointwise numeric geometry: Frenet frames, chart jets and Beltrami iterates.

Everything here works in fixed ambient coordinates.  A tube's spine and
frame at a chart point come from integrating the Frenet equations from u = 0
and are then expanded as power series in eps_u, so every field can be
turned into an ambient Jet and differentiated to any order.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DegenerateForm, MissingSymbol
from .frames import AmbientVec, FrameVec
from .geometry import ANCHOR_RING, SPHERE, TUBE, SurfaceChart
from .jets import Jet, cos_series, sin_series, vcross, vdot, vvalue
from .symexpr import canonicalize
from .symexpr.profile import NumericProfile, constant, default_profile
from .symexpr.symbols import (
    SLOT_COS,
    SLOT_COSU,
    SLOT_R,
    SLOT_SIN,
    SLOT_SINU,
    SLOT_U,
    symbol_for_slot,
    ufunc_slot,
)

# orientation of the numeric normal relative to x_u x x_phi, per chart kind
NORMAL_SIGN = {TUBE: 1.0, ANCHOR_RING: 1.0, SPHERE: -1.0}

ODE_RTOL = 1e-12
ODE_ATOL = 1e-12


# ------------------------------------------------------------------ profiles


def chart_profile(chart: SurfaceChart, u: float = 0.0, phi: float = 1.0) -> NumericProfile:
    """Numeric values matching a chart's stated parameters."""
    p = chart.params
    if chart.kind == ANCHOR_RING:
        kappa = float(p.get("kappa", 1))
        return NumericProfile(float(p.get("r", 0.2)), u, phi, constant(kappa, u), constant(0.0, u))
    if chart.kind == SPHERE:
        return NumericProfile(float(p.get("R", 1)), u, phi)
    if chart.kind == TUBE:
        base = default_profile(u=u, phi=phi)
        return NumericProfile(float(p.get("r", base.r)), u, phi, base.kappa, base.tau)
    return NumericProfile(float(p.get("r", 1)), u, phi)


# ------------------------------------------------------------------ frames


def frenet_series(kappa_c, tau_c, frame0, spine0, order: int):
    """Taylor coefficients of spine, t, h, b about a point.

    ``kappa_c``/``tau_c`` are Taylor coefficients of curvature and torsion;
    ``frame0`` rows are t, h, b at the point.  Returns arrays of shape
    (order + 1, 3).
    """
    F = np.zeros((order + 1, 3, 3))
    F[0] = frame0
    rho = np.zeros((order + 1, 3))
    rho[0] = spine0
    for n in range(order):
        acc = np.zeros((3, 3))
        for j in range(n + 1):
            k, t = kappa_c[j], tau_c[j]
            A = np.array([[0.0, k, 0.0], [-k, 0.0, t], [0.0, -t, 0.0]])
            acc += A @ F[n - j]
        F[n + 1] = acc / (n + 1)
        rho[n + 1] = F[n, 0] / (n + 1)
    return rho, F[:, 0], F[:, 1], F[:, 2]


def global_frames(profile: NumericProfile, us) -> dict:
    """Spine point and frame (rows t, h, b) at each u, starting from the identity at u = 0."""
    us = sorted(set(float(u) for u in us))
    out = {}
    if profile.kappa is None or profile.tau is None:
        raise MissingSymbol("tube frames need kappa and tau")

    def rhs(u, y):
        k, t = profile.kappa(u), profile.tau(u)
        T, H, B = y[3:6], y[6:9], y[9:12]
        return np.concatenate([T, k * H, -k * T + t * B, -t * H])

    y0 = np.concatenate([np.zeros(3), np.eye(3).ravel()])
    for sign in (1.0, -1.0):
        targets = [u for u in us if (u > 0 if sign > 0 else u < 0)]
        if not targets:
            continue
        end = max(targets) if sign > 0 else min(targets)
        t_eval = sorted(targets, reverse=sign < 0)
        sol = solve_ivp(rhs, (0.0, end), y0, method="DOP853", t_eval=t_eval, rtol=ODE_RTOL, atol=ODE_ATOL)
        for i, u in enumerate(sol.t):
            y = sol.y[:, i]
            out[float(u)] = (y[:3], y[3:].reshape(3, 3))
    for u in us:
        if u == 0.0:
            out[0.0] = (np.zeros(3), np.eye(3))
    return out


# ------------------------------------------------------------------ chart jets


class _SlotEnv(dict):
    def __init__(self, point: "PointJets"):
        super().__init__()
        self.point = point

    def __missing__(self, slot):
        val = self.point._slot_jet(slot)
        self[slot] = val
        return val


class PointJets:
    """Jets of a chart's geometry about one point (u0, phi0)."""

    def __init__(self, chart: SurfaceChart, profile: NumericProfile, order: int,
                 frame0=None, spine0=None, numeric_normal: bool = False):
        self.chart = chart
        self.profile = profile
        self.order = order
        self.u0, self.phi0 = profile.u, profile.phi
        if chart.kind == ANCHOR_RING and profile.kappa is not None:
            if any(abs(profile.kappa.deriv(i, self.u0)) > 0 for i in (1, 2)) or abs(profile.tau(self.u0)) > 0:
                raise ValueError("anchor-ring jets need constant kappa and vanishing tau")
        self.env = _SlotEnv(self)
        self.frame = None
        if chart.is_frame:
            frame0 = np.eye(3) if frame0 is None else np.asarray(frame0, dtype=float)
            spine0 = np.zeros(3) if spine0 is None else np.asarray(spine0, dtype=float)
            kc = profile.kappa.taylor(self.u0, order + 1)
            tc = profile.tau.taylor(self.u0, order + 1)
            rho, T, H, B = frenet_series(kc, tc, frame0, spine0, order)
            as_jets = lambda arr: tuple(Jet.from_u(arr[:, i], order) for i in range(3))
            self.spine = as_jets(rho)
            self.frame = (as_jets(T), as_jets(H), as_jets(B))
        self.delta = None
        if chart.is_frame:
            self.delta = 1.0 - self.env[SLOT_R] * self.env[ufunc_slot("kappa", 0)] * self.env[SLOT_COS]
        self.position = self.field(chart.position)
        x_u = tuple(c.du() for c in self.position)
        x_p = tuple(c.dphi() for c in self.position)
        self.tangents = (x_u, x_p)
        if chart.normal is not None and not numeric_normal:
            self.normal = self.field(chart.normal)
        else:
            cr = vcross(x_u, x_p)
            scale = NORMAL_SIGN.get(chart.kind, 1.0) / vdot(cr, cr).sqrt()
            self.normal = tuple(c * scale for c in cr)

    def _slot_jet(self, slot):
        n = self.order
        p = self.profile
        if slot == SLOT_COS:
            return Jet.from_phi(cos_series(self.phi0, n), n)
        if slot == SLOT_SIN:
            return Jet.from_phi(sin_series(self.phi0, n), n)
        if slot == SLOT_R:
            return Jet.const(p.r, n)
        if slot == SLOT_U:
            return Jet.from_u([self.u0, 1.0], n)
        if slot == SLOT_COSU:
            return Jet.from_u(cos_series(self.u0, n), n)
        if slot == SLOT_SINU:
            return Jet.from_u(sin_series(self.u0, n), n)
        sym = symbol_for_slot(slot)
        fn = p.kappa if sym.kind == "kappa" else p.tau
        if fn is None:
            raise MissingSymbol(f"profile has no {sym.kind}")
        coeffs = [fn.deriv(sym.order + i, self.u0) / math.factorial(i) for i in range(n + 1)]
        return Jet.from_u(coeffs, n)

    def scalar(self, f) -> Jet:
        f = canonicalize(f)
        delta = self.delta
        if f.den[0] and delta is None:
            delta = 1.0 - self.env[SLOT_R] * self.env[ufunc_slot("kappa", 0)] * self.env[SLOT_COS]
        return f.evaluate(self.env, delta, one=Jet.const(1.0, self.order))

    def field(self, v) -> tuple:
        """Ambient jet vector of a FrameVec or AmbientVec field."""
        if isinstance(v, AmbientVec):
            return tuple(self.scalar(c) for c in v.components)
        if not isinstance(v, FrameVec):
            raise TypeError(f"not a vector field: {v!r}")
        out = tuple(Jet.const(0.0, self.order) for _ in range(3))
        for comp, basis in zip(v.components, self.frame):
            if isinstance(comp, int) and comp == 0:
                continue
            s = self.scalar(comp)
            out = tuple(o + s * e for o, e in zip(out, basis))
        if v.spine:
            out = tuple(o + v.spine * e for o, e in zip(out, self.spine))
        return out

    def frame_values(self) -> np.ndarray:
        """Rows t, h, b at the point (ambient kinds: the identity)."""
        if self.frame is None:
            return np.eye(3)
        return np.array([vvalue(e) for e in self.frame])

    def form(self, which: str) -> tuple:
        x_u, x_p = self.tangents
        if which == "I":
            return vdot(x_u, x_u), vdot(x_u, x_p), vdot(x_p, x_p)
        if which == "III":
            n_u = tuple(c.du() for c in self.normal)
            n_p = tuple(c.dphi() for c in self.normal)
            return vdot(n_u, n_u), vdot(n_u, n_p), vdot(n_p, n_p)
        if which == "II":
            n = self.normal
            return (vdot(tuple(c.du() for c in x_u), n),
                    vdot(tuple(c.dphi() for c in x_u), n),
                    vdot(tuple(c.dphi() for c in x_p), n))
        raise ValueError(f"unknown form {which!r}")


class NumericBeltrami:
    """Jet version of the expanded second Beltrami operator at one point."""

    def __init__(self, point: PointJets, which: str = "II"):
        self.point = point
        g11, g12, g22 = point.form(which)
        det = g11 * g22 - g12 * g12
        if abs(det.value) < 1e-300:
            raise DegenerateForm(f"form {which} is degenerate at the sample point")
        inv_det = det.reciprocal()
        i11, i12, i22 = g22 * inv_det, -g12 * inv_det, g11 * inv_det
        log_u = det.du() * inv_det * 0.5
        log_p = det.dphi() * inv_det * 0.5
        self.inv = (i11, i12, i22)
        self.c_uu = -i11
        self.c_uphi = -2.0 * i12
        self.c_phiphi = -i22
        self.c_u = -(i11.du() + i12.dphi()) - (log_u * i11 + log_p * i12)
        self.c_phi = -(i12.du() + i22.dphi()) - (log_u * i12 + log_p * i22)

    def apply_scalar(self, f: Jet) -> Jet:
        fu, fp = f.du(), f.dphi()
        return (self.c_uu * fu.du() + self.c_uphi * fu.dphi() + self.c_phiphi * fp.dphi()
                + self.c_u * fu + self.c_phi * fp)

    def apply(self, v):
        if isinstance(v, Jet):
            return self.apply_scalar(v)
        return tuple(self.apply_scalar(c) for c in v)


def numeric_iterate(chart: SurfaceChart, profile: NumericProfile, v, k: int, which: str = "II",
                    frame0=None, spine0=None) -> list:
    """Ambient values of Delta v, ..., Delta^k v at the profile's point.

    ``v`` is a symbolic field, or the strings "normal"/"position".
    """
    order = 2 * k + 4
    pt = PointJets(chart, profile, order, frame0, spine0)
    op = NumericBeltrami(pt, which)
    if isinstance(v, str):
        cur = pt.normal if v == "normal" else pt.position
    elif isinstance(v, (FrameVec, AmbientVec)):
        cur = pt.field(v)
    else:
        cur = pt.scalar(v)
    out = []
    for _ in range(k):
        cur = op.apply(cur)
        out.append(cur.value if isinstance(cur, Jet) else vvalue(cur))
    return out


def to_frame(values, point: PointJets) -> np.ndarray:
    """Frame components (t, h, b) of an ambient vector at the point."""
    return point.frame_values() @ np.asarray(values, dtype=float)


def symbolic_value(v, point: PointJets) -> np.ndarray:
    """Ambient value of a symbolic field at the point (float evaluation)."""
    if isinstance(v, (FrameVec, AmbientVec)):
        comps = np.array([canonicalize(c).eval(point.profile) if not (isinstance(c, int) and c == 0) else 0.0
                          for c in v.components])
        if isinstance(v, AmbientVec):
            return comps
        return point.frame_values().T @ comps
    return np.array(canonicalize(v).eval(point.profile))

