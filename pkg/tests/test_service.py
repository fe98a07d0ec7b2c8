import pytest
from fastapi.testclient import TestClient

from lrckit.service.app import app

client = TestClient(app)


@pytest.fixture(scope="module")
def full4_spec():
    resp = client.post("/codes/generate", json={
        "q": 4, "r": 2, "mu": 2, "w": 0, "l": 3, "strategy": "FULL",
    })
    assert resp.status_code == 200
    return resp.json()


def test_healthz():
    resp = client.get("/healthz")
    assert resp.status_code == 200 and resp.json() == {"status": "ok"}


def test_generate(full4_spec):
    assert (full4_spec["n"], full4_spec["k"]) == (9, 6)
    assert full4_spec["spec_text"].startswith("LRC1\n")


def test_generate_invalid_params():
    resp = client.post("/codes/generate", json={
        "q": 5, "r": 5, "l": 2, "strategy": "FULL",
    })
    assert resp.status_code == 422


def test_preset_endpoint():
    resp = client.post("/codes/preset", json={"q": 8, "row": 1})
    assert resp.status_code == 200
    body = resp.json()
    assert (body["n"], body["k"], body["r"], body["w"]) == (48, 36, 5, 4)


def test_preset_table_listing():
    resp = client.get("/presets/table1", params={"q": 16})
    assert resp.status_code == 200
    rows = resp.json()
    assert rows and all(row["l"] == 16 for row in rows)
    assert rows[0]["row"] == 1


def test_preset_table_infeasible():
    resp = client.get("/presets/table1", params={"q": 4})
    assert resp.status_code == 422


def test_verify(full4_spec):
    resp = client.post("/codes/verify", json={"spec_text": full4_spec["spec_text"]})
    assert resp.status_code == 200
    body = resp.json()
    assert body["distance_exact"] == 2
    assert body["optimal"] is True
    assert body["all_verified_hold"] is True
    assert {c["status"] for c in body["claims"]} == {"VERIFIED"}


def test_verify_malformed_400():
    resp = client.post("/codes/verify", json={"spec_text": "not a spec"})
    assert resp.status_code == 400


def test_encode_and_repair(full4_spec):
    spec = full4_spec["spec_text"]
    resp = client.post("/codes/encode", json={"spec_text": spec, "message": [1, 2, 3, 0, 1, 2]})
    assert resp.status_code == 200
    word = resp.json()["codeword"]
    assert len(word) == 9

    damaged = list(word)
    damaged[4] = None
    resp = client.post("/codes/repair", json={"spec_text": spec, "codeword": damaged})
    assert resp.status_code == 200
    body = resp.json()
    assert body["codeword"] == word
    assert body["repaired_positions"] == [4]
    assert body["reads_per_repair"] == 2


def test_repair_conflict_409(full4_spec):
    spec = full4_spec["spec_text"]
    damaged = [None, None] + [1] * 7
    resp = client.post("/codes/repair", json={"spec_text": spec, "codeword": damaged})
    assert resp.status_code == 409


def test_encode_wrong_length_422(full4_spec):
    resp = client.post("/codes/encode", json={
        "spec_text": full4_spec["spec_text"], "message": [1, 2],
    })
    assert resp.status_code == 422


def test_simulate(full4_spec):
    payload = {"spec_text": full4_spec["spec_text"], "failures": 1, "trials": 30, "seed": 9}
    resp = client.post("/codes/simulate", json=payload)
    assert resp.status_code == 200
    body = resp.json()
    assert body["fully_repaired_fraction"] == 1.0
    assert body["mean_reads_per_repaired_symbol"] == 2.0
    resp2 = client.post("/codes/simulate", json=payload)
    assert resp2.json() == body
