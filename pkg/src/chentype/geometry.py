"""Surface charts, their fundamental forms, curvatures and Gauss maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateForm, SymbolicUnavailable
from .frames import AmbientVec, FrameVec, canonical, cross, dot, scale
from .symexpr import (
    COS_PHI,
    COS_U,
    R,
    SIN_PHI,
    SIN_U,
    CanonForm,
    canonicalize,
    diff_phi,
    diff_u,
)

TUBE = "tube"
ANCHOR_RING = "anchor-ring"
SPHERE = "sphere"
GENERIC = "generic"
KINDS = (TUBE, ANCHOR_RING, SPHERE, GENERIC)


@dataclass(frozen=True)
class SurfaceChart:
    """A parametric surface x(u, phi).

    ``params`` holds optional exact values (r, kappa, R) used for display and
    numeric evaluation; symbolic work always keeps r and kappa as symbols.
    """

    kind: str
    position: FrameVec | AmbientVec
    params: dict = field(default_factory=dict, compare=False, hash=False)
    normal: FrameVec | AmbientVec | None = None

    @property
    def is_frame(self) -> bool:
        return isinstance(self.position, FrameVec)

    def reduce(self, x):
        """Impose the anchor-ring constraints (tau = 0, kappa constant)."""
        if self.kind != ANCHOR_RING:
            return x
        if isinstance(x, CanonForm):
            return x.specialize_ring()
        if isinstance(x, FrameVec):
            return FrameVec(*(self.reduce(c) for c in x.components), x.spine)
        return x

    def du(self, x):
        if isinstance(x, (FrameVec, AmbientVec)):
            return self.reduce(canonical(x.d_du()))
        return self.reduce(canonicalize(diff_u(x)))

    def dphi(self, x):
        if isinstance(x, (FrameVec, AmbientVec)):
            return self.reduce(canonical(x.d_dphi()))
        return self.reduce(canonicalize(diff_phi(x)))

    def tangents(self):
        return self.du(self.position), self.dphi(self.position)


@dataclass(frozen=True)
class FundForm:
    """Symmetric form g11 du^2 + 2 g12 du dphi + g22 dphi^2."""

    which: str
    g11: CanonForm
    g12: CanonForm
    g22: CanonForm

    @property
    def components(self) -> tuple:
        return (self.g11, self.g12, self.g22)

    @property
    def det(self) -> CanonForm:
        return self.g11 * self.g22 - self.g12 * self.g12

    def inverse(self) -> tuple:
        """Components (g^11, g^12, g^22) of the inverse tensor."""
        det = self.det
        if det.is_zero:
            raise DegenerateForm(f"form {self.which} has identically vanishing determinant")
        inv = det.inverse()
        return (self.g22 * inv, -self.g12 * inv, self.g11 * inv)

    def matrix(self):
        return ((self.g11, self.g12), (self.g12, self.g22))


@dataclass(frozen=True)
class Curvatures:
    K: CanonForm
    H: CanonForm


# ------------------------------------------------------------------ charts


def _fraction(x):
    return None if x is None else Fraction(x)


def make_tube(r=None) -> SurfaceChart:
    """Tube of radius r about a unit-speed spine: rho + r cos(phi) h + r sin(phi) b."""
    pos = canonical(FrameVec(0, R * COS_PHI, R * SIN_PHI, spine=1))
    params = {} if r is None else {"r": _fraction(r)}
    return SurfaceChart(TUBE, pos, params, normal=canonical(FrameVec(0, -COS_PHI, -SIN_PHI)))


def make_anchor_ring(kappa=None, r=None) -> SurfaceChart:
    """Tube about a circle: constant kappa, tau = 0."""
    tube = make_tube()
    params = {k: _fraction(v) for k, v in (("kappa", kappa), ("r", r)) if v is not None}
    return SurfaceChart(ANCHOR_RING, tube.position, params, normal=tube.normal)


def make_sphere(radius=None) -> SurfaceChart:
    """Sphere of radius R (the symbol r) about the origin, latitude phi.

    The normal is inward, n = -x/R, the orientation under which the second
    form is positive definite.
    """
    pos = canonical(AmbientVec(R * COS_PHI * COS_U, R * COS_PHI * SIN_U, R * SIN_PHI))
    normal = canonical(AmbientVec(-COS_PHI * COS_U, -COS_PHI * SIN_U, -SIN_PHI))
    params = {} if radius is None else {"R": _fraction(radius)}
    return SurfaceChart(SPHERE, pos, params, normal=normal)


def make_generic(x, y, z, params=None) -> SurfaceChart:
    """User chart in ambient coordinates; its normal exists numerically only."""
    pos = canonical(AmbientVec(x, y, z))
    return SurfaceChart(GENERIC, pos, dict(params or {}), normal=None)


BUILTIN = {
    TUBE: make_tube,
    ANCHOR_RING: make_anchor_ring,
    SPHERE: make_sphere,
}


# ------------------------------------------------------------------ forms


def gauss_map(s: SurfaceChart):
    """Unit normal in closed form (tube family and sphere)."""
    if s.normal is None:
        raise SymbolicUnavailable(f"{s.kind} charts have a numeric normal only")
    return s.normal


def first_form(s: SurfaceChart) -> FundForm:
    x1, x2 = s.tangents()
    return _checked(FundForm("I", s.reduce(canonicalize(dot(x1, x1))),
                             s.reduce(canonicalize(dot(x1, x2))),
                             s.reduce(canonicalize(dot(x2, x2)))))


def second_form(s: SurfaceChart) -> FundForm:
    n = gauss_map(s)
    x1, x2 = s.tangents()
    x11, x12, x22 = s.du(x1), s.dphi(x1), s.dphi(x2)
    return _checked(FundForm("II", canonicalize(dot(x11, n)), canonicalize(dot(x12, n)),
                             canonicalize(dot(x22, n))))


def third_form(s: SurfaceChart) -> FundForm:
    n = gauss_map(s)
    n1, n2 = s.du(n), s.dphi(n)
    return _checked(FundForm("III", canonicalize(dot(n1, n1)), canonicalize(dot(n1, n2)),
                             canonicalize(dot(n2, n2))))


def fundamental_form(s: SurfaceChart, which: str) -> FundForm:
    return {"I": first_form, "II": second_form, "III": third_form}[which](s)


def _checked(form: FundForm) -> FundForm:
    if form.det.is_zero:
        raise DegenerateForm(f"form {form.which} is degenerate")
    return form


def curvatures(s: SurfaceChart) -> Curvatures:
    I, II = first_form(s), second_form(s)
    inv_det = I.det.inverse()
    K = II.det * inv_det
    H = (I.g11 * II.g22 - 2 * I.g12 * II.g12 + I.g22 * II.g11) * inv_det * CanonForm.const(Fraction(1, 2))
    return Curvatures(K, H)


def gauss_curvature(s: SurfaceChart) -> CanonForm:
    return curvatures(s).K


def normal_orientation(s: SurfaceChart) -> dict:
    """Relation between the closed-form normal and x_u x x_phi.

    Returns the canonical ``dot(x_u x x_phi, n)``, whether the cross product
    is parallel to n, and whether that dot squared equals det(I), i.e.
    cross = (dot) * n with |cross| = sqrt(det I).
    """
    n = gauss_map(s)
    x1, x2 = s.tangents()
    c = canonical(cross(x1, x2))
    along = canonicalize(dot(c, n))
    residual = canonical(c - scale(along, n))
    parallel = all(x.is_zero for x in residual.components)
    unit = (along * along - first_form(s).det).is_zero
    return {"dot_cross_normal": along, "parallel": parallel, "unit_scale": unit}
