from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from chentype.cli import build_chart, main, parse_coordinate, parse_rational, read_chart_document
from chentype.errors import ChartParseError


def invoke(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env, catch_exceptions=False)


def run_json(*args, code=0):
    res = invoke(*args)
    assert res.exit_code == code, res.output
    return json.loads(res.output)


class TestForms:
    def test_tube_second_form(self):
        doc = run_json("forms", "--surface", "tube")
        II = doc["results"][0]["II"]
        assert II["b22"] == "r" and II["b12"] == "r*tau"
        assert II["b11"] == "-cos(phi)*kappa + r*tau^2 + cos(phi)^2*r*kappa^2"

    def test_sphere_curvature(self):
        doc = run_json("forms", "--surface", "sphere", "--radius", "2")
        assert doc["results"][0]["K_substituted"] == "1/4"

    def test_ring_first_form(self):
        doc = run_json("forms", "--surface", "anchor-ring", "--kappa", "1", "--r", "0.5")
        sub = doc["results"][0]["I"]["substituted"]
        assert (sub["g11"], sub["g12"], sub["g22"]) == ("delta^2", "0", "1/4")

    def test_report_envelope(self):
        doc = run_json("--seed", "4", "forms")
        assert set(doc) == {"version", "seed", "config", "results"}
        assert doc["seed"] == 4 and doc["config"]["command"] == "forms"


class TestLaplace:
    def test_tube_gauss_map(self):
        doc = run_json("laplace", "--surface", "tube", "--target", "gaussmap", "--k", "1")
        comps = doc["results"][0]["components"]
        assert comps["t"]["pole_orders"] == {"delta": 2, "cos_phi": 1}

    def test_sphere_position(self):
        doc = run_json("laplace", "--surface", "sphere", "--target", "position", "--k", "1")
        comps = doc["results"][0]["components"]
        assert comps["z"]["value"] == "2*sin(phi)"

    def test_ring_second_iterate(self):
        doc = run_json("laplace", "--surface", "anchor-ring", "--target", "gaussmap", "--k", "2")
        assert doc["results"][1]["components"]["h"]["pole_orders"] == {"delta": 3, "cos_phi": 3}

    def test_budget_exit(self):
        res = invoke("laplace", "--surface", "tube", "--k", "4", "--budget", "100")
        assert res.exit_code == 4

    def test_numeric_fallback(self):
        doc = run_json("--numeric", "laplace", "--surface", "tube", "--k", "4", "--budget", "100")
        assert doc["results"][-1]["mode"] == "numeric"


class TestVerify:
    def test_tube_claims(self):
        doc = run_json("verify", "--surface", "tube", "--claims", "II-tube,K-eq7")
        assert [r["verdict"] for r in doc["results"]] == ["PASS", "PASS"]
        assert all(r["anchor"] for r in doc["results"])

    def test_sphere_claims(self):
        doc = run_json("verify", "--surface", "sphere", "--claims", "sphere-T1,sphere-T2,identity-eq4")
        assert {r["verdict"] for r in doc["results"]} == {"PASS"}

    def test_unknown_claim(self):
        assert invoke("verify", "--claims", "no-such").exit_code == 5

    def test_documented_discrepancy_exit_codes(self):
        assert invoke("verify", "--claims", "hlambda").exit_code == 0
        assert invoke("--strict", "verify", "--claims", "hlambda").exit_code == 1
        assert invoke("verify", "--claims", "hlambda", "--strict").exit_code == 1

    def test_csv_and_text(self):
        res = invoke("--format", "csv", "verify", "--claims", "K-eq7")
        lines = res.output.splitlines()
        assert lines[0].startswith("version,seed,") and len(lines) == 2
        res = invoke("verify", "--claims", "K-eq7", "--format", "text")
        assert "verdict: PASS" in res.output

    def test_environment_override(self):
        doc = json.loads(invoke("list-surfaces", env={"CHENTYPE_SEED": "17"}).output)
        assert doc["seed"] == 17


class TestFiniteType:
    def test_sphere(self):
        doc = run_json("finite-type", "--surface", "sphere", "--k-max", "3")
        assert doc["results"][0]["verdict"] == "FiniteTypeCandidate(1)"

    def test_ring(self):
        doc = run_json("finite-type", "--surface", "anchor-ring", "--k-max", "5")
        assert doc["results"][0]["ranks"] == [2, 3, 4, 5, 6]
        assert doc["results"][0]["verdict"] == "InfiniteTypeEvidence"

    def test_tube_default_profile(self):
        doc = run_json("finite-type", "--surface", "tube", "--k-max", "3", "--profile", "default")
        assert doc["results"][0]["verdict"] == "InfiniteTypeEvidence"

    def test_degenerate_sampling(self, tmp_path):
        chart = tmp_path / "plane.chart"
        chart.write_text("kind = generic\nx = cos(phi)*cos(u)\ny = cos(phi)*sin(u)\nz = 0\n")
        assert invoke("finite-type", "--chart", str(chart), "--k-max", "2").exit_code == 2


class TestChartDocuments:
    def test_rationals(self):
        assert parse_rational("0.1") == parse_rational("1/10")
        with pytest.raises(ChartParseError):
            parse_rational("abc")

    def test_document(self):
        doc = read_chart_document("# ring\nkind = anchor-ring\nkappa = 1\nr = 1/3\n")
        chart, _ = build_chart(doc)
        assert chart.kind == "anchor-ring" and str(chart.params["r"]) == "1/3"

    def test_bad_documents(self):
        for text in ("kind tube", "kind = tube\nkind = tube", "kind = torus", "kind = sphere\nkappa = 1"):
            with pytest.raises(ChartParseError):
                build_chart(read_chart_document(text))

    def test_coordinates(self):
        parse_coordinate("r*cos(phi)*cos(u) + 0.5*sin(u)**2")
        for bad in ("exp(u)", "phi", "cos(2*u)", "1/(1+cos(u))", "u +"):
            with pytest.raises(ChartParseError):
                parse_coordinate(bad)

    def test_generic_verify(self, tmp_path):
        chart = tmp_path / "ellipsoid.chart"
        chart.write_text("kind = generic\nr = 1\nx = r*cos(phi)*cos(u)\ny = 2*r*cos(phi)*sin(u)\nz = r*sin(phi)/3\n")
        doc = run_json("verify", "--chart", str(chart))
        assert [r["verdict"] for r in doc["results"]] == ["NUMERIC_ONLY_PASS"]

    def test_parse_error_exit(self, tmp_path):
        chart = tmp_path / "bad.chart"
        chart.write_text("kind = generic\nx = exp(u)\ny = u\nz = u\n")
        assert invoke("forms", "--chart", str(chart)).exit_code == 3


class TestListings:
    def test_list_claims(self):
        doc = run_json("list-claims")
        ids = [r["claim_id"] for r in doc["results"]]
        assert "hlambda" in ids and "eq20-k" in ids

    def test_list_surfaces(self):
        kinds = [r["kind"] for r in run_json("list-surfaces")["results"]]
        assert kinds == ["tube", "anchor-ring", "sphere", "generic"]


def test_console_entry_maps_usage_errors():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "chentype.cli", "verify", "--bogus"], capture_output=True)
    assert out.returncode == 3
