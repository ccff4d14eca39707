from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from chentype.claims import KNOWN_DISCREPANCIES, REGISTRY, claim_ids, resolve, run_claims
from chentype.errors import IllConditionedSamples, UnknownClaim
from chentype.finitetype import (
    MISMATCH,
    PASS,
    _guard,
    annihilator_search,
    build_iterate_matrix,
    eq13_check,
    h_lambda_check,
    independence_rank,
    lemma1_check,
    pole_growth,
    sample_points,
    tube_h_values,
    type_evidence,
)
from chentype.geometry import make_anchor_ring, make_sphere, make_tube


class TestSampling:
    def test_deterministic(self):
        assert sample_points(40, 3) == sample_points(40, 3)
        assert sample_points(40, 3) != sample_points(40, 4)

    def test_avoids_parabolic_circle(self):
        for u, phi in sample_points(200, 0):
            assert abs(math.cos(phi)) >= 0.1

    def test_guard(self):
        with pytest.raises(IllConditionedSamples):
            _guard(make_tube(), None, [(0.0, math.pi / 2)])


class TestRankAndAnnihilator:
    def test_sphere_is_type_one(self):
        sphere = make_sphere(radius=Fraction(3, 2))
        m = build_iterate_matrix(sphere, 2, samples=40, seed=1)
        assert independence_rank(m, K=2) == 1
        ann = annihilator_search(m, 1)
        assert ann.residual < 1e-9
        assert math.isclose(ann.eigenvalues[0].real, 2 / 1.5, rel_tol=1e-8)

    def test_tolerance_must_be_positive(self):
        m = build_iterate_matrix(make_sphere(), 1, samples=20)
        with pytest.raises(ValueError):
            independence_rank(m, tol=0)

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            build_iterate_matrix(make_tube(), 3, samples=10)

    def test_ring_evidence(self):
        ev = type_evidence(make_anchor_ring(kappa=1, r=Fraction(1, 3)), k_max=3, seed=0)
        assert ev.ranks == [2, 3, 4]
        assert ev.verdict == "InfiniteTypeEvidence"
        assert min(ev.residuals) >= 1e-2

    def test_report_is_serialisable(self):
        import json

        ev = type_evidence(make_sphere(), k_max=2, seed=0, with_poles=False)
        json.dumps(ev.to_dict())
        assert ev.verdict == "FiniteTypeCandidate(1)"


def _orders(rows, comp):
    return [(row["components"][comp]["delta"], row["components"][comp]["cos_phi"]) for row in rows]


class TestPoleGrowth:
    def test_tube_t_orders(self):
        assert _orders(pole_growth(make_tube(), 3), "t") == [(2, 1), (5, 4), (8, 7)]

    def test_ring_orders(self):
        rows = pole_growth(make_anchor_ring(), 3)
        assert _orders(rows, "h") == [(1, 1), (3, 3), (5, 5)]
        assert _orders(rows, "b") == [(1, 0), (3, 1), (5, 3)]

    def test_sphere_rejected(self):
        with pytest.raises(ValueError):
            pole_growth(make_sphere(), 1)


class TestLeadingCoefficients:
    """Engine-derived leading coefficients (these differ from several quoted displays)."""

    def test_tube_h_values(self):
        assert [int(x) for x in tube_h_values(3)] == [1, 14, 910]

    def test_lemma_sign(self):
        rep = lemma1_check(1, 2)
        assert rep.verdict == MISMATCH
        assert rep.details["h_tilde_at_delta0_engine"] == "-14"
        assert rep.details["h_tilde_at_delta0_claimed"] == "14"

    def test_ring_recurrence_coefficient(self):
        for n in range(1, 4):
            rep = eq13_check(1, n)
            assert Fraction(rep.details["leading_coefficient_engine_cos0"]) == Fraction(-n * (2 * n + 1), 2)

    def test_delta_polynomial_display(self):
        from chentype.finitetype import EXPLICIT_H, delta_poly_str, h_lambda_product

        assert delta_poly_str(h_lambda_product(2)) == "-12*delta"
        assert delta_poly_str(EXPLICIT_H[2]()) == "36*delta^2 - 45*delta + 14"

    def test_h_lambda_report(self):
        rep = h_lambda_check(3)
        assert rep.verdict == MISMATCH
        assert "h_3(0) = 910" in rep.computed


class TestClaimRegistry:
    def test_ids_unique_and_ordered(self):
        ids = claim_ids()
        assert len(ids) == len(set(ids))
        assert ids[0] == "I-tube"

    def test_alias(self):
        assert [c.claim_id for c in resolve(["eq20-k"])] == ["eq20-k1", "eq20-k2", "eq20-k3", "eq20-k4"]

    def test_unknown(self):
        with pytest.raises(UnknownClaim):
            resolve(["no-such"])

    def test_known_discrepancies_registered(self):
        assert KNOWN_DISCREPANCIES <= set(claim_ids())

    def test_every_claim_has_anchor(self):
        assert all(c.anchor for c in REGISTRY)

    @pytest.mark.parametrize("cid", ["I-tube", "II-tube", "K-eq7", "op-eq8", "gaussmap-eq9", "two-path-eq3",
                                     "dII2-n-eq12", "I-ring", "II-ring", "op-eq17", "dII-n-eq16/18",
                                     "dII2-n-ring", "eq20-k1", "eq20-k2", "sphere-T1", "sphere-T2"])
    def test_passing_claims(self, cid):
        reps = run_claims(None, [cid])
        assert reps and all(r.verdict == PASS for r in reps), [r.details for r in reps]

    @pytest.mark.parametrize("cid", sorted(KNOWN_DISCREPANCIES))
    def test_documented_discrepancies(self, cid):
        reps = run_claims(None, [cid])
        assert all(r.verdict == MISMATCH and r.details["known_discrepancy"] for r in reps)

    def test_identity_runs_on_each_surface(self):
        reps = run_claims(None, ["identity-eq4"])
        assert [r.details["surface"] for r in reps] == ["tube", "anchor-ring", "sphere"]
        assert all(r.verdict == PASS for r in reps)

    def test_chart_selects_claims(self):
        reps = run_claims(make_sphere(radius=2))
        assert [r.claim_id for r in reps] == ["identity-eq4", "sphere-T1", "sphere-T2"]
        assert all(r.verdict == PASS for r in reps)

    def test_to_dict_schema(self):
        (rep,) = run_claims(None, ["K-eq7"])
        assert set(rep.to_dict()) == {"claim_id", "verdict", "expected", "computed", "anchor", "residuals"}

    def test_same_seed_same_reports(self):
        a = run_claims(None, ["two-path-eq3"], seed=1)
        b = run_claims(None, ["two-path-eq3"], seed=1)
        assert [r.to_dict() for r in a] == [r.to_dict() for r in b]


def test_rank_tolerance_sensitivity():
    m = build_iterate_matrix(make_anchor_ring(kappa=1, r=Fraction(1, 3)), 2, samples=60, seed=2)
    assert independence_rank(m, tol=1e-8, K=2) == 3
    assert np.isfinite(annihilator_search(m, 2).residual)
