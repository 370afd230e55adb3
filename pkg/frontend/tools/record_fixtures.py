"""Record service fixtures for the workbench test suite.

Starts the skyset service, replays every request the workbench makes,
and saves each exchange as JSON under tests/fixtures/. Each file keeps
the request alongside the response so the test harness can match
incoming fetches against it without any hand-kept routing table.

Run from the frontend directory:

    python3 tools/record_fixtures.py
"""

import json
import pathlib
import subprocess
import sys
import time

import httpx

PORT = 8766
BASE = f"http://127.0.0.1:{PORT}"
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

STETHOSCOPE = ("The instructor listens to the medical student with the stethoscope "
       "during class.")
PAINTER = "The painter looks over the wall."
LIBRARY = ("The construction workers build the school library during the "
       "summer. The students use the school library to study in the autumn "
       "in order to pass the exam. The school library provides shelter "
       "during the winter.")
DEBATE = ("The philosophy debate team member wears the debate team uniform "
          "per the debate team charter when participating in the debate "
          "competition.")
BAKING = ("The baking student chooses two baking projects according to the "
          "course syllabus by the third week of class.")
MUSIC = ("The music major takes the introductory music class to satisfy "
         "the music department requirement before graduation.")


def wait_ready(client: httpx.Client) -> None:
    for _ in range(100):
        try:
            client.get(f"{BASE}/tables/nope")
            return
        except httpx.TransportError:
            time.sleep(0.1)
    raise RuntimeError("service never came up")


class Recorder:
    def __init__(self, client: httpx.Client) -> None:
        self.client = client

    def take(self, name: str, method: str, path: str, *,
             params: list[tuple[str, str]] | None = None,
             body: dict | None = None) -> dict:
        kwargs: dict = {}
        if params is not None:
            kwargs["params"] = params
        if body is not None:
            kwargs["json"] = body
        response = self.client.request(method, BASE + path, **kwargs)
        fixture = {
            "request": {
                "method": method,
                "path": path,
                "params": params or [],
                "body": body,
            },
            "status": response.status_code,
            "body": response.json(),
        }
        out = OUT / f"{name}.json"
        out.write_text(json.dumps(fixture, indent=2) + "\n")
        print(f"  {name}: {method} {path} -> {response.status_code}")
        return fixture["body"]

    def quiet(self, method: str, path: str, body: dict) -> None:
        """Issue a request without recording it (background mutation)."""
        response = self.client.request(method, BASE + path, json=body)
        response.raise_for_status()


def record_everything(rec: Recorder) -> None:
    # Stethoscope sentence: two readings, settle on case 1.
    up = rec.take("stethoscope_upload", "POST", "/documents",
                  body={"text": STETHOSCOPE, "doc_id": "doc1"})
    tid = up["table_id"]
    group = up["candidates"][0]["group"]
    rec.take("stethoscope_findings_open", "GET", f"/tables/{tid}/findings")
    rec.take("stethoscope_resolve_case1", "POST", f"/tables/{tid}/resolve",
             body={"group": group, "choice": 0, "revision": 1})
    rec.take("stethoscope_findings_settled", "GET", f"/tables/{tid}/findings")

    # Same sentence again, but someone else settles it first: the
    # workbench's choice arrives with a stale revision and must reload.
    up = rec.take("stethoscope_conflict_upload", "POST", "/documents",
                  body={"text": STETHOSCOPE, "doc_id": "doc1"})
    tid = up["table_id"]
    group = up["candidates"][0]["group"]
    rec.take("stethoscope_conflict_findings_open", "GET", f"/tables/{tid}/findings")
    rec.quiet("POST", f"/tables/{tid}/resolve",
              {"group": group, "choice": 0, "revision": 1})
    rec.take("stethoscope_conflict_resolve_stale", "POST", f"/tables/{tid}/resolve",
             body={"group": group, "choice": 0, "revision": 1})
    rec.take("stethoscope_conflict_table", "GET", f"/tables/{tid}")
    rec.take("stethoscope_conflict_findings_settled", "GET",
             f"/tables/{tid}/findings")

    # Painter sentence, settle on case 2.
    up = rec.take("painter_upload", "POST", "/documents",
                  body={"text": PAINTER, "doc_id": "doc1"})
    tid = up["table_id"]
    group = up["candidates"][0]["group"]
    rec.take("painter_findings_open", "GET", f"/tables/{tid}/findings")
    rec.take("painter_resolve_case2", "POST", f"/tables/{tid}/resolve",
             body={"group": group, "choice": 1, "revision": 1})
    rec.take("painter_findings_settled", "GET", f"/tables/{tid}/findings")

    # Three-sentence school library passage, no rival readings.
    up = rec.take("library_upload", "POST", "/documents",
                  body={"text": LIBRARY, "doc_id": "doc1"})
    rec.take("library_findings", "GET", f"/tables/{up['table_id']}/findings")

    # Student handbook tables: upload three, concatenate, explore.
    ids = []
    for name, text in [("debate", DEBATE), ("baking", BAKING),
                       ("music", MUSIC)]:
        doc_id = f"doc{len(ids) + 1}"
        up = rec.take(f"{name}_upload", "POST", "/documents",
                      body={"text": text, "doc_id": doc_id})
        ids.append(up["table_id"])
        rec.take(f"{name}_findings", "GET",
                 f"/tables/{up['table_id']}/findings")
    cat = rec.take("students_concat", "POST", "/tables/concat",
                   body={"table_ids": ids})
    tid = cat["table_id"]
    rec.take("students_findings", "GET", f"/tables/{tid}/findings")
    rec.take("students_rows_debate", "GET", f"/tables/{tid}/rows",
             params=[("filter", "TOPIC/ROLE contains debate")])
    rec.take("students_rows_music", "GET", f"/tables/{tid}/rows",
             params=[("filter", "TOPIC/ROLE contains music")])
    rec.take("students_rows_all", "GET", f"/tables/{tid}/rows")
    rec.take("students_rows_sorted", "GET", f"/tables/{tid}/rows",
             params=[("sort", "TOPIC/ROLE")])
    rec.take("students_search_syllabus", "GET", f"/tables/{tid}/rows",
             params=[("search", "syllabus")])
    rec.take("students_rows_bad_filter", "GET", f"/tables/{tid}/rows",
             params=[("filter", "NOPE contains x")])


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    server = subprocess.Popen(
        [sys.executable, "-m", "uvicorn", "--factory",
         "skyset.service:create_app", "--port", str(PORT),
         "--log-level", "warning"],
    )
    try:
        with httpx.Client(timeout=10.0) as client:
            wait_ready(client)
            recorder = Recorder(client)
            record_everything(recorder)
    finally:
        server.terminate()
        server.wait(timeout=10)
    print(f"fixtures written to {OUT}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
