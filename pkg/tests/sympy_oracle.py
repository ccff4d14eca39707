"""Independent sympy model of tube geometry, used as a reference in tests.

Curvature and torsion derivatives are plain symbols k0, k1, ... and t0, t1, ...;
the u-derivative is the chain rule over them.  Vectors are frame coordinates
(t, h, b) differentiated with the Frenet-Serret equations.
"""

from __future__ import annotations

import math

import sympy as sp

ORDER = 12
phi, r = sp.symbols("phi r", real=True)
K = sp.symbols(f"k0:{ORDER}", real=True)
T = sp.symbols(f"t0:{ORDER}", real=True)
c, s = sp.cos(phi), sp.sin(phi)
delta = 1 - r * K[0] * c


def Du(f):
    return sum(sp.diff(f, K[i]) * K[i + 1] + sp.diff(f, T[i]) * T[i + 1] for i in range(ORDER - 1))


def Dphi(f):
    return sp.diff(f, phi)


def vdu(v, spine=0, ring=False):
    at, ah, ab = v
    k, t = K[0], (0 if ring else T[0])
    return (Du(at) - k * ah + spine, Du(ah) + k * at - t * ab, Du(ab) + t * ah)


def vdphi(v):
    return tuple(Dphi(x) for x in v)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


POSITION = (0, r * c, r * s)
NORMAL = (0, -c, -s)


def tube_forms():
    xu = vdu(POSITION, spine=1)
    xp = vdphi(POSITION)
    I = (vdot(xu, xu), vdot(xu, xp), vdot(xp, xp))
    II = (vdot(vdu(xu), NORMAL), vdot(vdphi(xu), NORMAL), vdot(vdphi(xp), NORMAL))
    nu, np_ = vdu(NORMAL), vdphi(NORMAL)
    III = (vdot(nu, nu), vdot(nu, np_), vdot(np_, np_))
    return I, II, III


def beltrami_scalar(form, f):
    """-(1/sqrt|g|) d_i (sqrt|g| g^ij f_j), written without the square root."""
    g11, g12, g22 = form
    det = g11 * g22 - g12 * g12
    i11, i12, i22 = g22 / det, -g12 / det, g11 / det
    fu, fp = Du(f), Dphi(f)
    Xu, Xp = i11 * fu + i12 * fp, i12 * fu + i22 * fp
    ddet = (Du(det), Dphi(det))
    return -(Du(Xu) + Dphi(Xp) + (ddet[0] * Xu + ddet[1] * Xp) / (2 * det))


def substitutions(profile):
    subs = {phi: profile.phi, r: profile.r}
    for i in range(ORDER):
        subs[K[i]] = profile.kappa.deriv(i, profile.u)
        subs[T[i]] = profile.tau.deriv(i, profile.u)
    return subs


def value(expr, profile) -> float:
    return float(sp.sympify(expr).evalf(subs=substitutions(profile)))


ATOMS = {
    "c": c,
    "s": s,
    "kappa": K[0],
    "tau": T[0],
    "kappa1": K[1],
    "delta": delta,
    "r": r,
    "inv_delta": 1 / delta,
    "inv_kc": 1 / (K[0] * c),
}


def close(a: float, b: float, rel: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=rel)
