"""The HTTP service endpoints and the thin CLI client."""

import json

import pytest
from fastapi.testclient import TestClient

from cuntzalg.cli import main
from cuntzalg.service import app

client = TestClient(app)


class TestHealth:
    def test_health(self):
        resp = client.get("/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["version"]


class TestEvalEndpoint:
    def test_exact_eval(self):
        resp = client.post("/eval", json={"expr": "S1*S1' + S2*S2'", "n": 2})
        assert resp.status_code == 200
        body = resp.json()
        assert body["display"] == "1"
        assert body["element"]["terms"][0]["alpha"] == []

    def test_numeric_eval_has_no_element_payload(self):
        resp = client.post("/eval", json={"expr": "zeta(8,1)", "n": 2,
                                          "backend": "numeric"})
        assert resp.status_code == 200
        assert "element" not in resp.json()

    def test_parse_error_is_400_with_position(self):
        resp = client.post("/eval", json={"expr": "S1 + + S2", "n": 2})
        assert resp.status_code == 400
        detail = resp.json()["detail"]
        assert detail["line"] == 1 and detail["column"] == 6
        assert detail["expected"]

    def test_out_of_range_generator(self):
        resp = client.post("/eval", json={"expr": "S9", "n": 2})
        assert resp.status_code == 400
        assert "out of 1..2" in resp.json()["detail"]["message"]

    def test_rank_validation(self):
        resp = client.post("/eval", json={"expr": "S1", "n": 1})
        assert resp.status_code == 422


class TestEqEndpoint:
    def test_equal(self):
        resp = client.post("/eq", json={"lhs": "S1'*S1", "rhs": "1", "n": 2})
        assert resp.status_code == 200
        assert resp.json()["equal"] is True

    def test_different(self):
        resp = client.post("/eq", json={"lhs": "S1", "rhs": "S2", "n": 2})
        assert resp.json()["equal"] is False

    def test_numeric_backend_agrees(self):
        payload = {"lhs": "sqrt(2)*sqrt(2)", "rhs": "2", "n": 2}
        exact = client.post("/eq", json=payload).json()
        payload["backend"] = "numeric"
        numeric = client.post("/eq", json=payload).json()
        assert exact["equal"] is True and numeric["equal"] is True


class TestVerifyEndpoint:
    def test_nogo_suite(self):
        resp = client.post("/verify", json={"suite": "nogo", "n": 2})
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is True
        ids = [c["id"] for c in body["checks"]]
        assert "V_squared_is_minus_identity" in ids
        assert ids == sorted(ids)

    def test_check_ids_unique(self):
        body = client.post("/verify",
                           json={"suite": "cyclic-fixed", "n": 2}).json()
        ids = [c["id"] for c in body["checks"]]
        assert len(ids) == len(set(ids))

    def test_invalid_rank_for_suite(self):
        resp = client.post("/verify", json={"suite": "exchange", "n": 3})
        assert resp.status_code == 400

    def test_unknown_suite_rejected(self):
        resp = client.post("/verify", json={"suite": "bogus", "n": 2})
        assert resp.status_code == 422

    def test_candidate_witness_payload(self):
        body = client.post("/verify", json={"suite": "nogo", "n": 2}).json()
        by_id = {c["id"]: c for c in body["checks"]}
        verdicts = by_id["equations_candidate_subset"]["witness"]["verdicts"]
        assert verdicts[:8] == [True, True, True, True, False, False, False, False]


class TestReportDeterminism:
    def test_reports_identical_apart_from_elapsed(self):
        payload = {"suite": "spectral", "n": 2, "seed": 7, "samples": 10}
        a = client.post("/verify", json=payload).json()
        b = client.post("/verify", json=payload).json()
        a.pop("elapsed_ms")
        b.pop("elapsed_ms")
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_seed_changes_nothing_structural(self):
        one = client.post("/verify", json={"suite": "spectral", "n": 2,
                                           "seed": 1, "samples": 5}).json()
        two = client.post("/verify", json={"suite": "spectral", "n": 2,
                                           "seed": 2, "samples": 5}).json()
        assert [c["id"] for c in one["checks"]] == [c["id"] for c in two["checks"]]


class TestCli:
    def test_eval(self, capsys):
        assert main(["eval", "S1*S1' + S2*S2'", "--n", "2"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_eval_json(self, capsys):
        assert main(["eval", "-S1", "--n", "2", "--json"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["display"] == "-S1"

    def test_eq_exit_codes(self, capsys):
        assert main(["eq", "S1'*S1", "1", "--n", "2"]) == 0
        assert main(["eq", "S1", "S2", "--n", "2"]) == 1

    def test_parse_error_exits_2(self, capsys):
        assert main(["eval", "S1 +", "--n", "2"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_usage_error_exits_2(self, capsys):
        assert main(["verify", "--suite", "exchange", "--n", "3"]) == 2

    def test_verify_pass(self, capsys):
        assert main(["verify", "--suite", "nogo", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "V_squared_is_minus_identity" in out
        assert "fail=0" in out

    def test_report_to_file(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code = main(["report", "--suite", "nogo", "--n", "2",
                     "--out", str(out_file)])
        assert code == 0
        body = json.loads(out_file.read_text())
        assert body["suite"] == "nogo"
        assert body["passed"] is True

    def test_numeric_backend_flag(self, capsys):
        assert main(["eq", "sqrt(8)", "2*sqrt(2)", "--n", "2",
                     "--backend", "numeric"]) == 0

    def test_unknown_subcommand_exits_2(self, capsys):
        assert main(["frobnicate"]) == 2
