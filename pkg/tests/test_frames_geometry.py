from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

import sympy_oracle as so
from chentype.errors import DegenerateForm, MixedFrames, SymbolicUnavailable
from chentype.frames import B, H, T, AmbientVec, FrameVec, canonical, cross, dot, vec_is_zero
from chentype.geometry import (
    curvatures,
    first_form,
    fundamental_form,
    gauss_curvature,
    gauss_map,
    make_anchor_ring,
    make_generic,
    make_sphere,
    make_tube,
    normal_orientation,
    second_form,
    third_form,
)
from chentype.symexpr import COS_PHI, COS_U, DELTA, KAPPA, R, SIN_PHI, SIN_U, TAU, canonicalize
from chentype.symexpr.profile import NumericProfile, constant


class TestFrenetFrame:
    def test_serret_frenet(self):
        assert vec_is_zero(canonical(T.d_du() - FrameVec(0, KAPPA, 0)))
        assert vec_is_zero(canonical(H.d_du() - FrameVec(-1 * KAPPA, 0, TAU)))
        assert vec_is_zero(canonical(B.d_du() - FrameVec(0, -1 * TAU, 0)))

    def test_orthonormal_algebra(self):
        assert dot(T, T) == 1 and dot(T, H) == 0
        assert cross(T, H) == B and cross(H, B) == T

    def test_mixed_frames_rejected(self):
        with pytest.raises(MixedFrames):
            dot(T, AmbientVec(1, 0, 0))

    def test_spine_term_differentiates_to_tangent(self):
        v = FrameVec(0, 0, 0, spine=1).d_du()
        assert v.t == 1 and v.spine == 0


class TestTubeForms:
    def test_forms_match_sympy(self, profiles):
        I_ref, II_ref, III_ref = so.tube_forms()
        tube = make_tube()
        for which, ref in (("I", I_ref), ("II", II_ref), ("III", III_ref)):
            form = fundamental_form(tube, which)
            for p in profiles:
                for got, want in zip(form.components, ref):
                    assert so.close(got.eval(p), so.value(want, p), 1e-10)

    def test_gauss_curvature_closed_form(self):
        K = gauss_curvature(make_tube())
        c, k, r, d = (canonicalize(x) for x in (COS_PHI, KAPPA, R, DELTA))
        assert K == -k * c * (r * d).inverse()

    def test_mean_curvature_numeric(self, profiles):
        H_form = curvatures(make_tube()).H
        I_ref, II_ref, _ = so.tube_forms()
        for p in profiles[:3]:
            g = [so.value(x, p) for x in I_ref]
            b = [so.value(x, p) for x in II_ref]
            det = g[0] * g[2] - g[1] ** 2
            want = (g[0] * b[2] - 2 * g[1] * b[1] + g[2] * b[0]) / (2 * det)
            assert so.close(H_form.eval(p), want, 1e-10)

    def test_normal_is_unit_and_orthogonal(self):
        tube = make_tube()
        n = gauss_map(tube)
        info = normal_orientation(tube)
        assert info["parallel"] and info["unit_scale"]
        for x in tube.tangents():
            assert canonicalize(dot(n, x)).is_zero

    def test_third_form_is_positive(self, profiles):
        III = third_form(make_tube())
        for p in profiles:
            assert III.det.eval(p) > 0


class TestRingAndSphere:
    def test_ring_specialisation_drops_torsion(self):
        ring = make_anchor_ring()
        g11, g12, g22 = first_form(ring).components
        d = canonicalize(DELTA)
        assert g12.is_zero and g11 == d * d

    def test_ring_numeric_parameters(self):
        ring = make_anchor_ring(kappa=1, r=Fraction(1, 2))
        g22 = first_form(ring).components[2]
        assert str(g22.substitute_constants({"r": Fraction(1, 2)})) == "1/4"

    def test_sphere_curvature(self):
        K = gauss_curvature(make_sphere(radius=2))
        assert str(K.substitute_constants({"r": 2})) == "1/4"
        assert curvatures(make_sphere()).H == canonicalize(1 / R)

    def test_sphere_normal_points_inward(self):
        sphere = make_sphere()
        n = gauss_map(sphere)
        # r n + x = 0 with r the radius symbol
        rn = AmbientVec(*(R * c for c in n.components))
        assert vec_is_zero(canonical(rn + sphere.position))


class TestGenericChart:
    def ellipsoid(self):
        return make_generic(R * COS_PHI * COS_U, 2 * R * COS_PHI * SIN_U, R * SIN_PHI / 3, {"r": 1})

    def test_first_form_symbolic(self):
        I = first_form(self.ellipsoid())
        p = NumericProfile(1.0, 0.3, 0.4)
        x_u = np.array([-math.cos(0.4) * math.sin(0.3), 2 * math.cos(0.4) * math.cos(0.3), 0.0])
        assert so.close(I.components[0].eval(p), float(x_u @ x_u), 1e-12)

    def test_normal_numeric_only(self):
        with pytest.raises(SymbolicUnavailable):
            second_form(self.ellipsoid())

    def test_degenerate_form(self):
        # a planar chart has vanishing second fundamental form
        plane = make_generic(COS_PHI * COS_U, COS_PHI * SIN_U, 0, {})
        from chentype.numeric import PointJets

        pt = PointJets(plane, NumericProfile(1.0, 0.2, 0.5), 3)
        g = [x.value for x in pt.form("II")]
        assert abs(g[0] * g[2] - g[1] ** 2) < 1e-14


class TestDegenerateForm:
    def test_inverse_of_zero_form(self):
        from chentype.geometry import FundForm

        zero = canonicalize(0 * R)
        with pytest.raises(DegenerateForm):
            FundForm("II", zero, zero, zero).inverse()

    def test_ring_profile_constant(self):
        assert constant(2.0).deriv(1, 0.0) == 0.0
