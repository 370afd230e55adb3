"""HTTP service over the toolkit.

Tables live in memory under ids handed out at creation. Mutating calls
carry the revision the client last saw; a mismatch means someone else got
there first and returns 409 rather than silently overwriting. All errors
use one envelope: {"code", "message", "detail"}.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .engine.pipeline import TranslationOptions, translate_document
from .lexicon import CueLexicon, Glossary, default_lexicon
from .lint import DEFAULT_REQUIRED, findings_to_json, lint_table
from .model import Category, SkysetTable, make_quintuple_schema
from .render import RenderError, render_table
from .stats import (
    ExperimentData,
    bundled_experiment,
    censoring_report,
    mean_ratio,
    summarize,
    tukey_hsd,
)
from .store import (
    StoreError,
    concat_tables,
    filter_rows,
    parse_filter,
    resolve_candidate,
    search_table,
    sort_rows,
    table_to_json,
)


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 detail: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


class _TableRecord:
    def __init__(self, table: SkysetTable,
                 descriptions: dict[str, str] | None = None):
        self.table = table
        self.revision = 1
        self.descriptions = descriptions or {}
        # Groups the table ever had, so a second resolve of the same group
        # can answer "already settled" instead of "no such group".
        self.known_groups = {
            r.candidate_group for r in table.rows
            if r.candidate_group is not None
        }


class OptionsIn(BaseModel):
    strip_articles: bool = True
    strip_plural_suffix: bool = False
    normalize_passive: bool = True
    merge_refinements: bool = True
    split_alternatives: bool = True

    def to_options(self) -> TranslationOptions:
        return TranslationOptions(
            strip_articles=self.strip_articles,
            strip_plural_suffix=self.strip_plural_suffix,
            normalize_passive=self.normalize_passive,
            merge_refinements=self.merge_refinements,
            split_alternatives=self.split_alternatives,
        )


class DocumentIn(BaseModel):
    text: str = Field(min_length=1)
    doc_id: str = "doc"
    title: str = ""
    domain: str = ""
    options: OptionsIn = Field(default_factory=OptionsIn)


class ResolveIn(BaseModel):
    group: str
    choice: int
    revision: int


class ConcatIn(BaseModel):
    table_ids: list[str] = Field(min_length=1)


class StatsIn(BaseModel):
    groups: list[str] | None = None
    participants: list[str] | None = None
    values: dict[str, list[float]] | None = None
    alpha: float = 0.05
    limit: float | None = None


def create_app(
    *,
    lexicon: CueLexicon | None = None,
    glossary: Glossary | None = None,
    required: frozenset[Category] = DEFAULT_REQUIRED,
) -> FastAPI:
    if not required:
        raise ValueError("required categories must not be empty")
    app = FastAPI(title="skyset", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])

    lex = lexicon if lexicon is not None else default_lexicon()
    tables: dict[str, _TableRecord] = {}
    counter = {"next": 1}

    @app.exception_handler(ServiceError)
    async def _service_error(request: Request, exc: ServiceError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message,
                     "detail": exc.detail})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request,
                                exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "invalid_request",
                     "message": "request body or parameters are malformed",
                     "detail": exc.errors()})

    def _record(table_id: str) -> _TableRecord:
        record = tables.get(table_id)
        if record is None:
            raise ServiceError(
                404, "unknown_table", f"no table {table_id!r}")
        return record

    def _new_table(table: SkysetTable,
                   descriptions: dict[str, str] | None = None) -> str:
        table_id = f"t{counter['next']}"
        counter["next"] += 1
        tables[table_id] = _TableRecord(table, descriptions)
        return table_id

    def _table_payload(table_id: str, record: _TableRecord) -> dict:
        return {
            "table_id": table_id,
            "revision": record.revision,
            "table": table_to_json(record.table),
        }

    @app.post("/documents", status_code=201)
    def post_document(body: DocumentIn) -> dict:
        result = translate_document(
            body.text, doc_id=body.doc_id, title=body.title,
            domain=body.domain, options=body.options.to_options(),
            lexicon=lex)
        descriptions = {c.group: c.description for c in result.candidates}
        table_id = _new_table(result.table, descriptions)
        payload = _table_payload(table_id, tables[table_id])
        payload["candidates"] = [
            {
                "group": c.group,
                "doc": c.doc,
                "sentence": c.sentence_index,
                "size": c.size,
                "description": c.description,
            }
            for c in result.candidates
        ]
        payload["issues"] = [
            {
                "sentence": i.sentence_index,
                "message": i.message,
                "kind": i.kind,
            }
            for i in result.issues
        ]
        return payload

    @app.get("/tables/{table_id}")
    def get_table(table_id: str) -> dict:
        return _table_payload(table_id, _record(table_id))

    @app.get("/tables/{table_id}/rows")
    def get_rows(
        table_id: str,
        filter: list[str] = Query(default=[]),
        search: str | None = None,
        sort: str | None = None,
        reverse: bool = False,
    ) -> dict:
        record = _record(table_id)
        table = record.table
        try:
            conditions = [parse_filter(f, table.schema) for f in filter]
            if conditions:
                table = filter_rows(table, conditions)
            if search is not None:
                hits = search_table(table, search)
                return {
                    "revision": record.revision,
                    "hits": [
                        {"row": h.row_index, "column": h.column,
                         "text": h.text}
                        for h in hits
                    ],
                }
            if sort is not None:
                cond = parse_filter(f"{sort} not-null", table.schema)
                table = sort_rows(table, cond.column, reverse=reverse)
        except StoreError as exc:
            raise ServiceError(422, "bad_query", str(exc)) from exc
        return {
            "revision": record.revision,
            "rows": table_to_json(table)["rows"],
        }

    @app.get("/tables/{table_id}/findings")
    def get_findings(table_id: str) -> dict:
        record = _record(table_id)
        findings = lint_table(
            record.table, required=required, glossary=glossary,
            descriptions=record.descriptions, lexicon=lex)
        return {
            "revision": record.revision,
            "findings": findings_to_json(findings),
        }

    @app.post("/tables/{table_id}/resolve")
    def post_resolve(table_id: str, body: ResolveIn) -> dict:
        record = _record(table_id)
        if body.revision != record.revision:
            raise ServiceError(
                409, "stale_revision",
                f"table is at revision {record.revision}, request was "
                f"against {body.revision}",
                {"revision": record.revision})
        try:
            resolve_candidate(record.table, body.group, body.choice)
        except KeyError as exc:
            if body.group in record.known_groups:
                raise ServiceError(
                    409, "already_resolved",
                    f"group {body.group!r} was already settled") from exc
            raise ServiceError(
                404, "unknown_group",
                f"no candidate group {body.group!r}") from exc
        except IndexError as exc:
            raise ServiceError(
                422, "choice_out_of_range", str(exc)) from exc
        record.revision += 1
        return _table_payload(table_id, record)

    @app.post("/tables/concat", status_code=201)
    def post_concat(body: ConcatIn) -> dict:
        records = [_record(tid) for tid in body.table_ids]
        try:
            merged = concat_tables([r.table for r in records])
        except StoreError as exc:
            raise ServiceError(422, "concat_failed", str(exc)) from exc
        descriptions: dict[str, str] = {}
        for r in records:
            descriptions.update(r.descriptions)
        table_id = _new_table(merged, descriptions)
        return _table_payload(table_id, tables[table_id])

    @app.get("/tables/{table_id}/render")
    def get_render(table_id: str, voice: str = "active") -> dict:
        record = _record(table_id)
        try:
            sentences = render_table(record.table, voice=voice)
        except RenderError as exc:
            raise ServiceError(422, "render_failed", str(exc)) from exc
        return {"revision": record.revision, "sentences": sentences}

    @app.post("/stats")
    def post_stats(body: StatsIn) -> dict:
        if body.values is not None:
            groups = tuple(body.groups or sorted(body.values))
            first = next(iter(body.values.values()), [])
            participants = tuple(
                body.participants
                or [str(i + 1) for i in range(len(first))])
            try:
                data = ExperimentData(
                    groups, participants,
                    {g: tuple(v) for g, v in body.values.items()})
            except ValueError as exc:
                raise ServiceError(
                    422, "bad_experiment", str(exc)) from exc
        else:
            data = bundled_experiment()
            if body.limit is None:
                body.limit = 300.0
        try:
            result = tukey_hsd(data, alpha=body.alpha)
        except ValueError as exc:
            raise ServiceError(422, "bad_experiment", str(exc)) from exc
        means = {s.group: s.mean for s in summarize(data)}
        slow = max(data.groups, key=lambda g: means[g])
        fast = min(data.groups, key=lambda g: means[g])
        payload = {
            "groups": [
                {"group": s.group, "n": s.n, "mean": s.mean, "std": s.std}
                for s in summarize(data)
            ],
            "df": result.df,
            "mse": result.mse,
            "se": result.se,
            "q_critical": result.q_critical,
            "alpha": result.alpha,
            "comparisons": [
                {
                    "pair": f"{c.second}-{c.first}",
                    "diff": c.diff,
                    "lower": c.lower,
                    "upper": c.upper,
                    "p": c.p_value,
                    "significant": c.reject,
                }
                for c in result.comparisons
            ],
            "slowest_over_fastest": {
                "slow": slow, "fast": fast,
                "ratio": mean_ratio(data, slow, fast),
            },
        }
        if body.limit is not None:
            payload["censored"] = [
                {"group": c.group, "participant": c.participant,
                 "value": c.value}
                for c in censoring_report(data, body.limit)
            ]
        return payload

    return app
