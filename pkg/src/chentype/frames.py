"""Vectors over the moving Frenet frame and over a fixed ambient basis.

Components may be Exprs, CanonForms, plain integers or numeric jets; the
operations only need ``+``, ``*`` and ``diff_u``/``diff_phi`` on them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MixedFrames
from .symexpr import KAPPA, TAU, canonicalize, diff_phi, diff_u, is_zero


def _is_num_zero(x) -> bool:
    return isinstance(x, int) and x == 0


def _mul(a, b):
    if _is_num_zero(a) or _is_num_zero(b):
        return 0
    return a * b


def _add(a, b):
    if _is_num_zero(a):
        return b
    if _is_num_zero(b):
        return a
    return a + b


def _sub(a, b):
    if _is_num_zero(b):
        return a
    if _is_num_zero(a):
        return -b
    return a - b


@dataclass(frozen=True)
class FrameVec:
    """a_t t + a_h h + a_b b (+ spine * rho, the spine point itself).

    The spine term carries an integer weight; only its u-derivative
    (``spine * t``) is ever needed, so it never enters dot products.
    """

    t: object = 0
    h: object = 0
    b: object = 0
    spine: int = 0

    @property
    def components(self) -> tuple:
        return (self.t, self.h, self.b)

    def map(self, fn) -> "FrameVec":
        return FrameVec(fn(self.t), fn(self.h), fn(self.b), self.spine)

    def __add__(self, other):
        _same_kind(self, other)
        return FrameVec(_add(self.t, other.t), _add(self.h, other.h), _add(self.b, other.b),
                        self.spine + other.spine)

    def __sub__(self, other):
        _same_kind(self, other)
        return FrameVec(_sub(self.t, other.t), _sub(self.h, other.h), _sub(self.b, other.b),
                        self.spine - other.spine)

    def __neg__(self):
        return FrameVec(_mul(-1, self.t), _mul(-1, self.h), _mul(-1, self.b), -self.spine)

    def d_du(self, kappa=KAPPA, tau=TAU) -> "FrameVec":
        """u-derivative with the Frenet-Serret connection t'=kh, h'=-kt+tb, b'=-th."""
        at, ah, ab = self.t, self.h, self.b
        return FrameVec(
            _add(_sub(diff_u(at), _mul(kappa, ah)), self.spine),
            _sub(_add(diff_u(ah), _mul(kappa, at)), _mul(tau, ab)),
            _add(diff_u(ab), _mul(tau, ah)),
        )

    def d_dphi(self) -> "FrameVec":
        return FrameVec(diff_phi(self.t), diff_phi(self.h), diff_phi(self.b))


@dataclass(frozen=True)
class AmbientVec:
    """Coordinates in a fixed orthonormal basis of E^3."""

    x: object = 0
    y: object = 0
    z: object = 0

    @property
    def components(self) -> tuple:
        return (self.x, self.y, self.z)

    def map(self, fn) -> "AmbientVec":
        return AmbientVec(fn(self.x), fn(self.y), fn(self.z))

    def __add__(self, other):
        _same_kind(self, other)
        return AmbientVec(_add(self.x, other.x), _add(self.y, other.y), _add(self.z, other.z))

    def __sub__(self, other):
        _same_kind(self, other)
        return AmbientVec(_sub(self.x, other.x), _sub(self.y, other.y), _sub(self.z, other.z))

    def __neg__(self):
        return self.map(lambda c: _mul(-1, c))

    def d_du(self, kappa=None, tau=None) -> "AmbientVec":
        return self.map(diff_u)

    def d_dphi(self) -> "AmbientVec":
        return self.map(diff_phi)


def _same_kind(a, b):
    if type(a) is not type(b):
        raise MixedFrames(f"cannot combine {type(a).__name__} with {type(b).__name__}")


def _no_spine(v):
    if isinstance(v, FrameVec) and v.spine:
        raise ValueError("the spine point has no frame coordinates; only its derivatives do")


def scale(e, v):
    """e * v for a scalar e."""
    return v.map(lambda c: _mul(e, c))


def add(a, b):
    return a + b


def dot(a, b):
    _same_kind(a, b)
    _no_spine(a)
    _no_spine(b)
    total = 0
    for x, y in zip(a.components, b.components):
        total = _add(total, _mul(x, y))
    return total


def cross(a, b):
    _same_kind(a, b)
    _no_spine(a)
    _no_spine(b)
    a1, a2, a3 = a.components
    b1, b2, b3 = b.components
    comps = (
        _sub(_mul(a2, b3), _mul(a3, b2)),
        _sub(_mul(a3, b1), _mul(a1, b3)),
        _sub(_mul(a1, b2), _mul(a2, b1)),
    )
    return type(a)(*comps)


def canonical(v):
    """Same vector with every component in canonical form."""
    return v.map(canonicalize) if not isinstance(v, FrameVec) else FrameVec(
        canonicalize(v.t), canonicalize(v.h), canonicalize(v.b), v.spine)


def vec_is_zero(v) -> bool:
    if isinstance(v, FrameVec) and v.spine:
        return False
    return all(is_zero(c) for c in v.components)


T = FrameVec(1, 0, 0)
H = FrameVec(0, 1, 0)
B = FrameVec(0, 0, 1)
