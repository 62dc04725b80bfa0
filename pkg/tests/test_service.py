"""Store semantics and the HTTP service surface."""

from __future__ import annotations

import base64
import json
import threading

import pytest
from fastapi.testclient import TestClient

from whaling_guard.evalharness.corpus import builtin_corpus_path
from whaling_guard.service.app import create_app
from whaling_guard.service.config import ServiceConfig, load_config, parse_config_text
from whaling_guard.service.maildrop import scan_maildrop
from whaling_guard.service.store import Store, StoreError

PROFILE_DIR = builtin_corpus_path() / "profile"
MESSAGES = builtin_corpus_path() / "messages"


def trio_bytes() -> dict[str, bytes]:
    return {
        "pvp": (PROFILE_DIR / "pvp.json").read_bytes(),
        "scenario_set": (PROFILE_DIR / "scenarios.json").read_bytes(),
        "pdp": (PROFILE_DIR / "pdp.json").read_bytes(),
    }


def trio_json() -> dict:
    return {
        "pvp": json.loads((PROFILE_DIR / "pvp.json").read_text()),
        "scenarios": json.loads((PROFILE_DIR / "scenarios.json").read_text()),
        "pdp": json.loads((PROFILE_DIR / "pdp.json").read_text()),
    }


def message_b64(name: str) -> str:
    return base64.b64encode((MESSAGES / name).read_bytes()).decode("ascii")


@pytest.fixture()
def store(tmp_path) -> Store:
    s = Store(tmp_path / "store")
    s.put_profile("t1", trio_bytes())
    return s


@pytest.fixture()
def client(tmp_path, store) -> TestClient:
    config = ServiceConfig(store_path=tmp_path / "store")
    app = create_app(config, store=store)
    return TestClient(app)


def analyze(client: TestClient, name: str, **overrides):
    payload = {
        "target_id": "t1",
        "raw_message": message_b64(name),
        "mode": "deterministic",
        "analysis_date": "2026-02-10",
    }
    payload.update(overrides)
    return client.post("/v1/analyze", json=payload)


class TestAnalyzeEndpoint:
    def test_analyze_persists_and_is_retrievable(self, client):
        response = analyze(client, "f-01-grant-suspension.eml")
        assert response.status_code == 200
        record = response.json()
        assert record["assessment"]["label"] == "highly_suspicious"
        fetched = client.get(f"/v1/assessments/{record['assessment_id']}")
        assert fetched.status_code == 200
        assert fetched.json()["assessment"] == record["assessment"]

    def test_unknown_target_404(self, client):
        response = analyze(client, "f-01-grant-suspension.eml", target_id="nobody")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "unknown_target"

    def test_undecodable_message_422(self, client):
        response = analyze(client, "f-01-grant-suspension.eml", raw_message="!!!notb64!!!")
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "parse_error"

    def test_empty_message_422_with_offset(self, client):
        empty = base64.b64encode(b"  ").decode()
        response = analyze(client, "f-01-grant-suspension.eml", raw_message=empty)
        assert response.status_code == 422
        assert response.json()["error"]["details"]["byte_offset"] == 0

    def test_statelessness_identical_inputs(self, client):
        a = analyze(client, "i-01-mail-migration.eml").json()
        b = analyze(client, "i-01-mail-migration.eml").json()
        assert a["assessment_id"] != b["assessment_id"]
        assert a["received_at"] <= b["received_at"]
        assert a["assessment"] == b["assessment"]

    def test_raw_message_not_stored_by_default(self, client):
        record = analyze(client, "b-01-seminar-thanks.eml").json()
        assert "raw_message_b64" not in record


class TestAllowlistRule:
    def test_allowlisted_sender_capped(self, client):
        baseline = analyze(client, "f-01-grant-suspension.eml").json()
        assert baseline["assessment"]["score"] > 25
        added = client.post(
            "/v1/allowlist",
            json={"address_or_domain": "grants-support.example", "added_by": "officer"},
        )
        assert added.status_code == 200
        capped = analyze(client, "f-01-grant-suspension.eml").json()
        assert capped["assessment"]["score"] <= 25
        assert capped["assessment"]["label"] == "safe"

    def test_exact_address_allowlisting(self, client):
        client.post(
            "/v1/allowlist",
            json={"address_or_domain": "grants-admin@grants-support.example"},
        )
        capped = analyze(client, "f-01-grant-suspension.eml").json()
        assert capped["assessment"]["score"] <= 25

    def test_duplicate_and_delete(self, client):
        client.post("/v1/allowlist", json={"address_or_domain": "a.example"})
        dup = client.post("/v1/allowlist", json={"address_or_domain": "a.example"})
        assert dup.status_code == 409
        listed = client.get("/v1/allowlist").json()
        assert [e["address_or_domain"] for e in listed] == ["a.example"]
        gone = client.delete("/v1/allowlist", params={"address_or_domain": "a.example"})
        assert gone.status_code == 204
        assert client.get("/v1/allowlist").json() == []
        missing = client.delete("/v1/allowlist", params={"address_or_domain": "a.example"})
        assert missing.status_code == 404


class TestQueueAndDecisions:
    def test_lifecycle(self, client):
        record = analyze(client, "f-01-grant-suspension.eml").json()
        assessment_id = record["assessment_id"]

        pending = client.get("/v1/queue", params={"status": "pending"}).json()
        assert [item["assessment_id"] for item in pending] == [assessment_id]
        assert pending[0]["summary"]["label"] == "highly_suspicious"

        decided = client.post(
            "/v1/decisions",
            json={"assessment_id": assessment_id, "decision": "reported", "note": "looks bad", "actor": "officer"},
        )
        assert decided.status_code == 200
        assert decided.json()["decision"] == "reported"

        assert client.get("/v1/queue", params={"status": "pending"}).json() == []
        decided_items = client.get("/v1/queue", params={"status": "decided"}).json()
        assert [item["assessment_id"] for item in decided_items] == [assessment_id]

        decisions = client.get("/v1/decisions").json()
        assert len(decisions) == 1
        assert decisions[0]["assessment_id"] == assessment_id

    def test_double_decision_409(self, client):
        record = analyze(client, "b-01-seminar-thanks.eml").json()
        body = {"assessment_id": record["assessment_id"], "decision": "verified_safe"}
        assert client.post("/v1/decisions", json=body).status_code == 200
        second = client.post("/v1/decisions", json=body)
        assert second.status_code == 409
        assert second.json()["error"]["code"] == "already_decided"

    def test_unknown_assessment_404(self, client):
        response = client.post(
            "/v1/decisions", json={"assessment_id": "nope", "decision": "deferred"}
        )
        assert response.status_code == 404

    def test_bad_decision_value(self, client):
        record = analyze(client, "b-01-seminar-thanks.eml").json()
        response = client.post(
            "/v1/decisions", json={"assessment_id": record["assessment_id"], "decision": "shrug"}
        )
        assert response.status_code == 422


class TestProfilesEndpoint:
    def test_put_then_get_byte_identical(self, client):
        for kind, expected in trio_bytes().items():
            raw = client.get("/v1/profiles/t1", params={"doc": kind})
            assert raw.status_code == 200
            assert raw.content == expected

    def test_put_new_target_roundtrip(self, client):
        body = json.loads(json.dumps(trio_json()))
        body["pvp"]["target_id"] = "t2"
        body["pdp"]["target_id"] = "t2"
        put = client.put("/v1/profiles/t2", json={**body, "partial": False})
        assert put.status_code == 200
        assert client.get("/v1/targets").json() == ["t1", "t2"]
        fetched = json.loads(client.get("/v1/profiles/t2", params={"doc": "pvp"}).content)
        assert fetched["target_id"] == "t2"

    def test_put_with_foreign_target_id_rejected(self, client):
        response = client.put("/v1/profiles/t2", json={**trio_json(), "partial": False})
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "target_mismatch"

    def test_put_dangling_scenario_rejected(self, client):
        body = trio_json()
        body["pdp"]["scenario_links"][0]["scenario_id"] = "missing"
        response = client.put("/v1/profiles/t3", json={**body, "partial": False})
        assert response.status_code == 422
        details = response.json()["error"]["details"]
        assert any(e["code"] == "dangling_scenario_ref" for e in details["errors"])

    def test_partial_put_merges_over_current(self, client):
        pdp = trio_json()["pdp"]
        pdp["generated_at"] = "2026-02-01T00:00:00+00:00"
        response = client.put("/v1/profiles/t1", json={"pdp": pdp, "partial": True})
        assert response.status_code == 200
        combined = client.get("/v1/profiles/t1").json()
        assert combined["pdp"]["generated_at"] == "2026-02-01T00:00:00+00:00"
        assert combined["pvp"]["target_id"] == "t1"

    def test_full_put_requires_trio(self, client):
        response = client.put("/v1/profiles/t9", json={"pvp": trio_json()["pvp"], "partial": False})
        assert response.status_code == 400

    def test_targets_listing(self, client):
        assert client.get("/v1/targets").json() == ["t1"]

    def test_get_unknown_target(self, client):
        assert client.get("/v1/profiles/zz").status_code == 404


class TestAuth:
    def test_token_required_when_configured(self, tmp_path):
        store = Store(tmp_path / "s")
        store.put_profile("t1", trio_bytes())
        config = ServiceConfig(store_path=tmp_path / "s", bearer_token="sekrit")
        client = TestClient(create_app(config, store=store))
        assert client.get("/v1/targets").status_code == 401
        ok = client.get("/v1/targets", headers={"Authorization": "Bearer sekrit"})
        assert ok.status_code == 200

    def test_config_endpoint_exposes_bands(self, client):
        config = client.get("/v1/config").json()
        assert config["bands"] == {"suspicious_threshold": 30, "high_threshold": 65}
        assert config["weights"]["scenario_scale"] == 45


class TestStoreDurability:
    def test_decision_log_lines_parse_independently(self, store):
        record = store.save_assessment("t1", {"label": "safe", "score": 0}, "subj", "a@b.example")
        store.record_decision(record["assessment_id"], "verified_safe", "", "me")
        for line in (store.root / "decisions.log").read_text().splitlines():
            parsed = json.loads(line)
            assert parsed["assessment_id"] == record["assessment_id"]

    def test_truncated_final_line_quarantined(self, tmp_path):
        store = Store(tmp_path / "s")
        store.put_profile("t1", trio_bytes())
        a = store.save_assessment("t1", {"label": "safe", "score": 0}, "s1", "a@b.example")
        b = store.save_assessment("t1", {"label": "safe", "score": 0}, "s2", "a@b.example")
        log = store.root / "assessments.log"
        data = log.read_bytes()
        log.write_bytes(data + b'{"assessment_id": "partial-', )  # simulated crash mid-append

        recovered = Store(tmp_path / "s")
        ids = {r["assessment_id"] for r in (recovered.get_assessment(a["assessment_id"]), recovered.get_assessment(b["assessment_id"]))}
        assert ids == {a["assessment_id"], b["assessment_id"]}
        quarantine = (store.root / "assessments.log.quarantine").read_bytes()
        assert b"partial-" in quarantine
        assert log.read_bytes() == data

    def test_append_only_no_rewrites(self, store):
        log = store.root / "assessments.log"
        store.save_assessment("t1", {"label": "safe", "score": 0}, "s1", "a@b.example")
        first = log.read_bytes()
        store.save_assessment("t1", {"label": "safe", "score": 0}, "s2", "a@b.example")
        second = log.read_bytes()
        assert second.startswith(first)

    def test_atomic_profile_replacement_under_concurrent_reads(self, store):
        # every version stamps the same marker into all three documents via a
        # preserved extra field; a reader observing two different markers in
        # one get_profile() call has seen a torn trio
        def stamped(version: int) -> dict[str, bytes]:
            out = {}
            for kind, raw in trio_bytes().items():
                data = json.loads(raw)
                data["x_version"] = version
                out[kind] = json.dumps(data).encode()
            return out

        stop = threading.Event()
        torn: list[tuple] = []

        def reader():
            while not stop.is_set():
                try:
                    trio = store.get_profile("t1")
                except StoreError:
                    continue
                versions = {
                    trio.pvp.extra.get("x_version"),
                    trio.scenarios.extra.get("x_version"),
                    trio.pdp.extra.get("x_version"),
                }
                if len(versions) != 1:
                    torn.append(tuple(versions))

        threads = [threading.Thread(target=reader) for _ in range(4)]
        for t in threads:
            t.start()
        try:
            for i in range(30):
                store.put_profile("t1", stamped(i))
        finally:
            stop.set()
            for t in threads:
                t.join()
        assert torn == []
        assert store.get_profile("t1").pvp.extra["x_version"] == 29

    def test_queue_decision_consistency_invariant(self, store):
        records = [
            store.save_assessment("t1", {"label": "safe", "score": 0}, f"s{i}", "a@b.example")
            for i in range(4)
        ]
        store.record_decision(records[1]["assessment_id"], "deferred", "", "x")
        pending = {q["assessment_id"] for q in store.queue("pending")}
        decided = {q["assessment_id"] for q in store.queue("decided")}
        assert decided == {records[1]["assessment_id"]}
        assert pending == {r["assessment_id"] for r in records} - decided
        decided_with_record = {d["assessment_id"] for d in store.list_decisions()}
        assert decided_with_record == decided


class TestMaildrop:
    def test_scan_processes_and_moves(self, tmp_path, store):
        drop = tmp_path / "drop"
        drop.mkdir()
        (drop / "one.eml").write_bytes((MESSAGES / "f-01-grant-suspension.eml").read_bytes())
        (drop / "bad.eml").write_bytes(b"  ")
        records = scan_maildrop(store, drop, "t1")
        assert len(records) == 1
        assert (drop / "processed" / "one.eml").exists()
        assert (drop / "failed" / "bad.eml").exists()
        assert not list(drop.glob("*.eml"))
        assert store.queue("pending")


class TestConfig:
    def test_parse_and_weight_overrides(self, tmp_path, monkeypatch):
        config_file = tmp_path / "svc.conf"
        config_file.write_text(
            "# comment\nstore_path = /tmp/x\nbind_port = 9000\n"
            "weights.credential_points = 25\nstore_raw_messages = true\n"
        )
        monkeypatch.delenv("WHALING_GUARD_TOKEN", raising=False)
        config = load_config(config_file)
        assert config.bind_port == 9000
        assert config.weights.credential_points == 25
        assert config.store_raw_messages is True

    def test_env_token_override(self, tmp_path, monkeypatch):
        config_file = tmp_path / "svc.conf"
        config_file.write_text("bearer_token = filetoken\n")
        monkeypatch.setenv("WHALING_GUARD_TOKEN", "envtoken")
        assert load_config(config_file).bearer_token == "envtoken"

    def test_bad_line_rejected(self):
        with pytest.raises(ValueError):
            parse_config_text("this line has no equals sign")
