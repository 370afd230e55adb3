import pytest
from fastapi.testclient import TestClient

from skyset.lexicon import load_glossary
from skyset.model import Category
from skyset.service import create_app

from golden_corpus import EXAMPLES

GLOSSARY_PATH = "tests/data/server_training_glossary.txt"


@pytest.fixture
def client():
    app = create_app(glossary=load_glossary(GLOSSARY_PATH))
    with TestClient(app) as c:
        yield c


def upload(client, number, **overrides):
    body = {"text": EXAMPLES[number], "doc_id": f"ex{number}"}
    body.update(overrides)
    response = client.post("/documents", json=body)
    assert response.status_code == 201, response.text
    return response.json()


def test_create_app_rejects_empty_required():
    with pytest.raises(ValueError):
        create_app(required=frozenset())


def test_post_document_returns_table_and_candidates(client):
    payload = upload(client, 2)
    assert payload["revision"] == 1
    assert payload["table_id"].startswith("t")
    assert len(payload["table"]["rows"]) == 2
    (candidates,) = payload["candidates"]
    assert candidates["group"] == "ex2:s0"
    assert candidates["size"] == 2
    assert "stethoscope" in candidates["description"]
    assert payload["issues"] == []


def test_post_document_validates_body(client):
    response = client.post("/documents", json={"text": ""})
    assert response.status_code == 422
    body = response.json()
    assert body["code"] == "invalid_request"
    assert "message" in body and "detail" in body


def test_get_table_roundtrip(client):
    created = upload(client, 1)
    response = client.get(f"/tables/{created['table_id']}")
    assert response.status_code == 200
    assert response.json()["table"] == created["table"]


def test_unknown_table_404(client):
    response = client.get("/tables/t999")
    assert response.status_code == 404
    assert response.json()["code"] == "unknown_table"


def test_rows_filter_search_sort(client):
    created = upload(client, 8)
    table_id = created["table_id"]

    response = client.get(
        f"/tables/{table_id}/rows",
        params={"filter": ["CONDITION contains during"]})
    assert response.status_code == 200
    assert len(response.json()["rows"]) == 2

    response = client.get(f"/tables/{table_id}/rows",
                          params={"search": "library"})
    hits = response.json()["hits"]
    assert {h["row"] for h in hits} == {0, 1, 2}

    response = client.get(f"/tables/{table_id}/rows",
                          params={"sort": "SERVICE", "reverse": True})
    services = [r["cells"]["SERVICE"] for r in response.json()["rows"]]
    assert services == sorted(services, key=str.casefold, reverse=True)


def test_rows_bad_filter_is_422(client):
    created = upload(client, 1)
    response = client.get(
        f"/tables/{created['table_id']}/rows",
        params={"filter": ["SUBJECT equals x"]})
    assert response.status_code == 422
    assert response.json()["code"] == "bad_query"


def test_findings_reflect_required_categories():
    app = create_app(required=frozenset(
        {Category.TOPIC_ROLE, Category.SERVICE, Category.PROCESS}))
    with TestClient(app) as client:
        created = upload(client, 5)
        response = client.get(f"/tables/{created['table_id']}/findings")
        (finding,) = response.json()["findings"]
        assert finding["kind"] == "Incomplete"
        assert finding["detail"] == "no Process stated"


def test_resolve_lifecycle(client):
    created = upload(client, 2)
    table_id = created["table_id"]

    stale = client.post(f"/tables/{table_id}/resolve",
                        json={"group": "ex2:s0", "choice": 0, "revision": 7})
    assert stale.status_code == 409
    body = stale.json()
    assert body["code"] == "stale_revision"
    assert body["detail"]["revision"] == 1

    bad_choice = client.post(
        f"/tables/{table_id}/resolve",
        json={"group": "ex2:s0", "choice": 5, "revision": 1})
    assert bad_choice.status_code == 422
    assert bad_choice.json()["code"] == "choice_out_of_range"

    unknown = client.post(
        f"/tables/{table_id}/resolve",
        json={"group": "ex2:s9", "choice": 0, "revision": 1})
    assert unknown.status_code == 404
    assert unknown.json()["code"] == "unknown_group"

    done = client.post(f"/tables/{table_id}/resolve",
                       json={"group": "ex2:s0", "choice": 0, "revision": 1})
    assert done.status_code == 200
    assert done.json()["revision"] == 2
    assert len(done.json()["table"]["rows"]) == 1

    again = client.post(f"/tables/{table_id}/resolve",
                        json={"group": "ex2:s0", "choice": 0, "revision": 2})
    assert again.status_code == 409
    assert again.json()["code"] == "already_resolved"

    findings = client.get(f"/tables/{table_id}/findings").json()["findings"]
    assert findings == []


def test_concat_multiple_tables(client):
    ids = [upload(client, n)["table_id"] for n in (1, 4, 5)]
    response = client.post("/tables/concat", json={"table_ids": ids})
    assert response.status_code == 201
    body = response.json()
    assert len(body["table"]["rows"]) == 3
    assert body["revision"] == 1


def test_concat_conflicting_docs_is_422(client):
    first = upload(client, 1, doc_id="doc")["table_id"]
    second = upload(client, 4, doc_id="doc")["table_id"]
    response = client.post("/tables/concat",
                           json={"table_ids": [first, second]})
    assert response.status_code == 422
    assert response.json()["code"] == "concat_failed"


def test_render_both_voices(client):
    created = upload(client, 5)
    table_id = created["table_id"]
    active = client.get(f"/tables/{table_id}/render").json()["sentences"]
    assert active == [
        "Professor distributes assignment before class begins."]
    passive = client.get(f"/tables/{table_id}/render",
                         params={"voice": "passive"}).json()["sentences"]
    assert passive == [
        "Assignment is distributed by professor before class begins."]
    bad = client.get(f"/tables/{table_id}/render",
                     params={"voice": "middle"})
    assert bad.status_code == 422
    assert bad.json()["code"] == "render_failed"


def test_stats_bundled_defaults(client):
    response = client.post("/stats", json={})
    assert response.status_code == 200
    body = response.json()
    assert body["df"] == 32
    assert body["q_critical"] == pytest.approx(3.8316, abs=5e-4)
    assert [c["pair"] for c in body["comparisons"]] == [
        "Q2-Q1", "Q3-Q1", "Q4-Q1", "Q3-Q2", "Q4-Q2", "Q4-Q3"]
    ratio = body["slowest_over_fastest"]
    assert (ratio["slow"], ratio["fast"]) == ("Q4", "Q3")
    assert ratio["ratio"] == pytest.approx(5.3314, abs=1e-3)
    assert [(c["group"], c["participant"]) for c in body["censored"]] == [
        ("Q4", "6"), ("Q4", "7")]


def test_stats_custom_values(client):
    response = client.post("/stats", json={
        "values": {"A": [10, 11, 12, 13], "B": [20, 21, 22, 23]},
        "alpha": 0.05,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["df"] == 6
    (comparison,) = body["comparisons"]
    assert comparison["pair"] == "B-A"
    assert comparison["diff"] == pytest.approx(10.0)
    assert "censored" not in body


def test_stats_rejects_unbalanced_values(client):
    response = client.post("/stats", json={
        "values": {"A": [10, 11], "B": [20]},
    })
    assert response.status_code == 422
    assert response.json()["code"] == "bad_experiment"


def test_stats_rejects_bad_alpha(client):
    response = client.post("/stats", json={
        "values": {"A": [10, 11], "B": [20, 21]},
        "alpha": 1.5,
    })
    assert response.status_code == 422


def test_facade_matches_library(client):
    """The HTTP layer reports exactly what the library computes."""
    from skyset import translate_document
    from skyset.store import table_to_json

    created = upload(client, 9)
    direct = translate_document(EXAMPLES[9], doc_id="ex9")
    assert created["table"] == table_to_json(direct.table)
