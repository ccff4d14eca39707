from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import sympy_oracle as so
from chentype.beltrami import (
    BeltramiOp,
    first_beltrami,
    identity_sides,
    iterate,
    laplacian,
    laplacian_direct,
    laplacian_vec,
)
from chentype.errors import ExpressionBudgetExceeded
from chentype.frames import canonical, vec_is_zero
from chentype.geometry import gauss_map, make_anchor_ring, make_sphere, make_tube
from chentype.jets import Jet, cos_series, sin_series
from chentype.numeric import PointJets, numeric_iterate, symbolic_value
from chentype.oracle import FiniteDifferenceOracle, relative_error
from chentype.symexpr import canonicalize, random_profile, ring_profile
from conftest import scalar_pairs


@pytest.fixture(scope="module")
def tube_ops():
    tube = make_tube()
    return {w: BeltramiOp(tube, w) for w in ("I", "II", "III")}


@pytest.fixture(scope="module")
def sympy_forms():
    return dict(zip(("I", "II", "III"), so.tube_forms()))


class TestScalarOperator:
    @settings(max_examples=15, deadline=None)
    @given(scalar_pairs(max_terms=2, max_factors=2), st.sampled_from(["I", "II", "III"]))
    def test_matches_sympy_divergence_form(self, tube_ops, sympy_forms, pair, which):
        engine, ref = pair
        got = laplacian(tube_ops[which], engine)
        want = so.beltrami_scalar(sympy_forms[which], ref)
        rng = np.random.default_rng(5)
        for _ in range(2):
            p = random_profile(rng, min_abs_cos=0.1)
            assert so.close(got.eval(p), so.value(want, p), 1e-7)

    @settings(max_examples=20, deadline=None)
    @given(scalar_pairs())
    def test_two_paths_agree(self, tube_ops, pair):
        f = pair[0]
        op = tube_ops["II"]
        assert (laplacian(op, f) - laplacian_direct(op, f)).is_zero

    def test_constants_are_harmonic(self, tube_ops):
        assert laplacian(tube_ops["II"], canonicalize(3)).is_zero

    def test_first_operator_symmetric(self, tube_ops):
        from conftest import ENGINE_ATOMS

        f, g = ENGINE_ATOMS["c"], ENGINE_ATOMS["s"] * ENGINE_ATOMS["kappa"]
        op = tube_ops["II"]
        assert (first_beltrami(op, f, g) - first_beltrami(op, g, f)).is_zero

    def test_vector_scalar_type_checks(self, tube_ops):
        op = tube_ops["II"]
        with pytest.raises(TypeError):
            laplacian(op, gauss_map(make_tube()))
        with pytest.raises(TypeError):
            laplacian_vec(op, canonicalize(1))


class TestIteration:
    def test_budget(self):
        tube = make_tube()
        with pytest.raises(ExpressionBudgetExceeded):
            iterate(BeltramiOp(tube), gauss_map(tube), 3, budget=50)

    def test_memo_reuse(self):
        ring = make_anchor_ring()
        op = BeltramiOp(ring)
        memo = {}
        a = iterate(op, gauss_map(ring), 2, memo=memo)
        b = iterate(op, gauss_map(ring), 3, memo=memo)
        assert a == b[:2] and len(memo) == 3

    @pytest.mark.parametrize("factory", [make_tube, make_anchor_ring, make_sphere])
    def test_identity_sides_agree(self, factory):
        left, right = identity_sides(factory())
        assert vec_is_zero(canonical(left - right))


class TestNumericLayer:
    def test_jet_series(self):
        x0 = 0.7
        c = Jet.from_u(cos_series(x0, 6), 6)
        s = Jet.from_u(sin_series(x0, 6), 6)
        one = c * c + s * s
        assert abs(one.value - 1) < 1e-15 and abs(one.partial(3, 0)) < 1e-12
        inv = (c + 2).reciprocal()
        assert math.isclose(inv.partial(1, 0), math.sin(x0) / (math.cos(x0) + 2) ** 2, rel_tol=1e-12)
        root = (c + 2).sqrt()
        assert math.isclose(root.partial(1, 0), -math.sin(x0) / (2 * math.sqrt(math.cos(x0) + 2)), rel_tol=1e-12)

    def test_jet_iterates_match_symbolic(self):
        tube = make_tube()
        its = iterate(BeltramiOp(tube), gauss_map(tube), 3)
        prof = random_profile(np.random.default_rng(3), min_abs_cos=0.2)
        vals = numeric_iterate(tube, prof, "normal", 3)
        pt = PointJets(tube, prof, 4)
        for sym, num in zip(its, vals):
            assert relative_error(num, symbolic_value(sym, pt)) < 1e-10

    def test_ring_jets(self):
        ring = make_anchor_ring(kappa=1, r=0.25)
        prof = ring_profile(1.0, 0.25, 0.4, 0.8)
        its = iterate(BeltramiOp(ring), gauss_map(ring), 2)
        vals = numeric_iterate(ring, prof, "normal", 2)
        pt = PointJets(ring, prof, 4)
        for sym, num in zip(its, vals):
            assert relative_error(num, symbolic_value(sym, pt)) < 1e-10

    def test_finite_difference_oracle(self):
        tube = make_tube()
        n = gauss_map(tube)
        dn = laplacian_vec(BeltramiOp(tube), n)
        rng = np.random.default_rng(11)
        for _ in range(3):
            o = FiniteDifferenceOracle(tube, random_profile(rng, min_abs_cos=0.1))
            assert relative_error(o.value(dn), o.laplacian(n)) < 1e-6

    def test_finite_difference_first_operator(self):
        tube = make_tube()
        op = BeltramiOp(tube)
        from conftest import ENGINE_ATOMS

        f, g = ENGINE_ATOMS["c"], ENGINE_ATOMS["s"] * ENGINE_ATOMS["kappa"]
        o = FiniteDifferenceOracle(tube, random_profile(np.random.default_rng(2), min_abs_cos=0.2))
        assert relative_error(o.first_beltrami(f, g), o.value(first_beltrami(op, f, g))) < 1e-6
