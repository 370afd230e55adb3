"""Table operations and persistence: concat, filter, search, sort, resolve,
and save/load in TSV (canonical), CSV, and JSON.

The TSV layout is one row per line with the schema labels as header,
followed by four bookkeeping columns (source document, sentence indices,
row status, candidate group). Document records travel as "#doc" preamble
lines so a saved table reloads with its sources intact.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, replace
from pathlib import Path

from .engine.segment import segment_sentences
from .model import (
    Category,
    Column,
    ColumnSchema,
    Entity,
    Provenance,
    RowStatus,
    SkysetRow,
    SkysetTable,
    SourceDocument,
)

META_COLUMNS = ("__doc", "__sentences", "__status", "__group")

FILTER_OPS = ("equals", "contains", "null", "not-null")


class StoreError(ValueError):
    pass


# ---------------------------------------------------------------- concat

def _target_column(entity: Entity, schema: ColumnSchema) -> Column:
    columns = {schema.column_for(c).label for c in entity.categories}
    if len(columns) != 1:
        raise StoreError(
            f"entity {entity.text!r} holds categories spanning columns "
            f"{sorted(columns)}; cannot re-project")
    return schema.column_by_label(next(iter(columns)))


def _reproject_row(row: SkysetRow, source: ColumnSchema,
                   target: ColumnSchema) -> SkysetRow:
    gathered: dict[str, list[Entity]] = {}
    for label in source.labels:
        entity = row.cells[label]
        if entity.is_null:
            continue
        col = _target_column(entity, target)
        gathered.setdefault(col.label, []).append(entity)

    cells: dict[str, Entity] = {}
    for col in target.columns:
        mine = gathered.get(col.label)
        if not mine:
            cells[col.label] = Entity(None, col.members)
        elif len(mine) == 1:
            cells[col.label] = mine[0]
        else:
            text = " ".join(e.text for e in mine)  # type: ignore[misc]
            cats: set[Category] = set()
            for e in mine:
                cats |= e.categories
            cells[col.label] = Entity(text, frozenset(cats))
    return replace(row, cells=cells)


def concat_tables(
    tables: list[SkysetTable], *, schema: ColumnSchema | None = None
) -> SkysetTable:
    """Stack tables into one, re-projecting rows by entity category.

    Works across differing column layouts as long as every entity's
    categories land in a single column of the target schema (the first
    table's schema unless given). Source documents merge by id; the same id
    with different content is an error, not a silent overwrite.
    """
    if not tables:
        raise StoreError("nothing to concatenate")
    if schema is None:
        schema = tables[0].schema

    out = SkysetTable(schema, [], {})
    for table in tables:
        for doc_id, doc in table.sources.items():
            existing = out.sources.get(doc_id)
            if existing is not None and existing != doc:
                raise StoreError(
                    f"document id {doc_id!r} appears twice with different "
                    "content")
            out.sources[doc_id] = doc
        same_layout = table.schema.labels == schema.labels and all(
            table.schema.column_by_label(l).members
            == schema.column_by_label(l).members
            for l in schema.labels
        )
        for row in table.rows:
            if same_layout:
                out.rows.append(replace(row, cells=dict(row.cells)))
            else:
                out.rows.append(_reproject_row(row, table.schema, schema))
    return out


# ---------------------------------------------------- filter, search, sort

@dataclass(frozen=True)
class FilterCondition:
    column: str
    op: str  # one of FILTER_OPS
    needle: str | None = None

    def __post_init__(self) -> None:
        if self.op not in FILTER_OPS:
            raise StoreError(f"unknown filter operator {self.op!r}")
        if self.op in ("equals", "contains") and self.needle is None:
            raise StoreError(f"filter {self.op} needs a value")
        if self.op in ("null", "not-null") and self.needle is not None:
            raise StoreError(f"filter {self.op} takes no value")

    def matches(self, row: SkysetRow) -> bool:
        text = row.cells[self.column].text
        if self.op == "null":
            return text is None
        if self.op == "not-null":
            return text is not None
        if text is None:
            return False
        assert self.needle is not None
        if self.op == "equals":
            return text.casefold() == self.needle.casefold()
        return self.needle.casefold() in text.casefold()


def parse_filter(expression: str, schema: ColumnSchema) -> FilterCondition:
    """Parse "<column> <op> [value]", e.g. "TOPIC/ROLE contains debate"."""
    parts = expression.split(None, 2)
    if len(parts) < 2:
        raise StoreError(
            f"bad filter {expression!r}: expected '<column> <op> [value]'")
    column_text, op = parts[0], parts[1].casefold()
    needle = parts[2] if len(parts) > 2 else None
    column = next(
        (l for l in schema.labels if l.casefold() == column_text.casefold()),
        None)
    if column is None:
        raise StoreError(
            f"unknown column {column_text!r}; have {', '.join(schema.labels)}")
    return FilterCondition(column, op, needle)


def filter_rows(
    table: SkysetTable, conditions: list[FilterCondition]
) -> SkysetTable:
    """Rows satisfying every condition; original order, same sources."""
    for cond in conditions:
        if cond.column not in table.schema.labels:
            raise StoreError(f"unknown column {cond.column!r}")
    rows = [r for r in table.rows if all(c.matches(r) for c in conditions)]
    return SkysetTable(table.schema, rows, dict(table.sources))


@dataclass(frozen=True)
class SearchHit:
    row_index: int
    column: str
    text: str


def search_table(table: SkysetTable, needle: str) -> list[SearchHit]:
    """Case-insensitive substring search, row-major over schema order."""
    folded = needle.casefold()
    hits: list[SearchHit] = []
    for i, row in enumerate(table.rows):
        for label in table.schema.labels:
            text = row.cells[label].text
            if text is not None and folded in text.casefold():
                hits.append(SearchHit(i, label, text))
    return hits


def sort_rows(
    table: SkysetTable, column: str, *, reverse: bool = False
) -> SkysetTable:
    """Stable sort by one column's text, case-insensitive, nulls always last."""
    if column not in table.schema.labels:
        raise StoreError(f"unknown column {column!r}")

    def key(row: SkysetRow) -> tuple[bool, str]:
        text = row.cells[column].text
        if text is None:
            # Nulls sort last in both directions.
            return (not reverse, "")
        return (reverse, text.casefold())

    rows = sorted(table.rows, key=key, reverse=reverse)
    return SkysetTable(table.schema, rows, dict(table.sources))


# ------------------------------------------------------------- resolve

def resolve_candidate(
    table: SkysetTable, group: str, choice: int
) -> SkysetRow:
    """Settle a candidate group: keep the chosen reading, drop its rivals.

    choice indexes the group's rows in table order, from 0. Raises KeyError
    for an unknown (or already settled) group and IndexError for a choice
    outside the group.
    """
    members = [i for i, r in enumerate(table.rows)
               if r.candidate_group == group]
    if not members:
        raise KeyError(f"no candidate group {group!r}")
    if not 0 <= choice < len(members):
        raise IndexError(
            f"choice {choice} outside group of {len(members)}")
    keep = table.rows[members[choice]]
    keep.status = RowStatus.FINAL
    keep.candidate_group = None
    for i in reversed(members):
        if table.rows[i] is not keep:
            del table.rows[i]
    return keep


# ---------------------------------------------------------- persistence

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}


def _escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def _unescape(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"t": "\t", "n": "\n", "r": "\r", "\\": "\\"}.get(
                nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _row_record(row: SkysetRow, labels: tuple[str, ...]) -> list[str]:
    record = [row.cells[l].text or "" for l in labels]
    record.append(row.provenance.doc)
    record.append(",".join(str(s) for s in row.provenance.sentences))
    record.append(row.status.value)
    record.append(row.candidate_group or "")
    return record


def _row_from_record(
    record: list[str], schema: ColumnSchema, where: str
) -> SkysetRow:
    labels = schema.labels
    expected = len(labels) + len(META_COLUMNS)
    if len(record) != expected:
        raise StoreError(
            f"{where}: expected {expected} fields, got {len(record)}")
    cells: dict[str, Entity] = {}
    for label, text in zip(labels, record):
        col = schema.column_by_label(label)
        cells[label] = Entity(text if text else None, col.members)
    doc, sentences_text, status_text, group = record[len(labels):]
    if not doc:
        raise StoreError(f"{where}: row has no source document")
    try:
        sentences = tuple(
            int(s) for s in sentences_text.split(",") if s != "")
    except ValueError:
        raise StoreError(
            f"{where}: bad sentence list {sentences_text!r}") from None
    if not sentences:
        raise StoreError(f"{where}: row names no sentences")
    try:
        status = RowStatus(status_text)
    except ValueError:
        raise StoreError(f"{where}: bad status {status_text!r}") from None
    return SkysetRow(
        cells=cells,
        provenance=Provenance(doc, sentences),
        status=status,
        candidate_group=group or None,
    )


def tsv_text(table: SkysetTable) -> str:
    lines: list[str] = []
    for doc in sorted(table.sources.values(), key=lambda d: d.doc_id):
        lines.append("#doc\t" + "\t".join(
            _escape(v) for v in (doc.doc_id, doc.title, doc.domain, doc.text)))
    lines.append("\t".join(table.schema.labels + META_COLUMNS))
    for row in table.rows:
        lines.append("\t".join(_row_record(row, table.schema.labels)))
    return "\n".join(lines) + "\n"


def save_tsv(table: SkysetTable, path: str | os.PathLike) -> None:
    Path(path).write_text(tsv_text(table), encoding="utf-8")


def _doc_from_fields(fields: list[str], where: str) -> SourceDocument:
    if len(fields) != 4:
        raise StoreError(f"{where}: #doc line needs 4 fields")
    doc_id, title, domain, text = (_unescape(f) for f in fields)
    return SourceDocument(
        doc_id, title, domain, text, tuple(segment_sentences(text)))


def _stub_sources(
    rows: list[SkysetRow], sources: dict[str, SourceDocument]
) -> None:
    """Register placeholder documents for rows whose source went unrecorded,
    sized to cover the sentence indices the rows mention."""
    highest: dict[str, int] = {}
    for row in rows:
        top = max(row.provenance.sentences)
        highest[row.provenance.doc] = max(
            highest.get(row.provenance.doc, 0), top)
    for doc_id, top in highest.items():
        have = sources.get(doc_id)
        if have is None:
            sentences = tuple("(unrecorded)" for _ in range(top + 1))
            sources[doc_id] = SourceDocument(doc_id, "", "", "", sentences)
        elif len(have.sentences) <= top:
            pad = tuple("(unrecorded)"
                        for _ in range(top + 1 - len(have.sentences)))
            sources[doc_id] = replace(have, sentences=have.sentences + pad)


def load_tsv(
    path: str | os.PathLike, *, schema: ColumnSchema
) -> SkysetTable:
    sources: dict[str, SourceDocument] = {}
    rows: list[SkysetRow] = []
    header_seen = False
    expected_header = list(table_header(schema))
    for n, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        where = f"{path}:{n}"
        fields = line.split("\t")
        if fields[0] == "#doc":
            doc = _doc_from_fields(fields[1:], where)
            sources[doc.doc_id] = doc
            continue
        if not header_seen:
            if fields != expected_header:
                raise StoreError(
                    f"{where}: header {fields} does not match schema")
            header_seen = True
            continue
        rows.append(_row_from_record(fields, schema, where))
    if not header_seen:
        raise StoreError(f"{path}: missing header line")
    _stub_sources(rows, sources)
    return SkysetTable(schema, rows, sources)


def table_header(schema: ColumnSchema) -> tuple[str, ...]:
    return schema.labels + META_COLUMNS


def csv_text(table: SkysetTable) -> str:
    """CSV carries the rows only; sources are stubbed on reload."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table_header(table.schema))
    for row in table.rows:
        writer.writerow(_row_record(row, table.schema.labels))
    return buf.getvalue()


def save_csv(table: SkysetTable, path: str | os.PathLike) -> None:
    Path(path).write_text(csv_text(table), encoding="utf-8")


def load_csv(
    path: str | os.PathLike, *, schema: ColumnSchema
) -> SkysetTable:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        records = [r for r in reader if r]
    if not records:
        raise StoreError(f"{path}: empty file")
    if records[0] != list(table_header(schema)):
        raise StoreError(f"{path}: header does not match schema")
    rows = [
        _row_from_record(rec, schema, f"{path}:{n}")
        for n, rec in enumerate(records[1:], 2)
    ]
    sources: dict[str, SourceDocument] = {}
    _stub_sources(rows, sources)
    return SkysetTable(schema, rows, sources)


def table_to_json(table: SkysetTable) -> dict:
    return {
        "schema": [
            {
                "label": col.label,
                "categories": sorted(c.title for c in col.members),
            }
            for col in table.schema.columns
        ],
        "rows": [
            {
                "cells": {
                    label: row.cells[label].text
                    for label in table.schema.labels
                },
                "doc": row.provenance.doc,
                "sentences": list(row.provenance.sentences),
                "status": row.status.value,
                "group": row.candidate_group,
            }
            for row in table.rows
        ],
        "sources": [
            {
                "doc_id": d.doc_id,
                "title": d.title,
                "domain": d.domain,
                "text": d.text,
                "sentences": list(d.sentences),
            }
            for d in sorted(table.sources.values(), key=lambda d: d.doc_id)
        ],
    }


def table_from_json(payload: dict) -> SkysetTable:
    try:
        columns = tuple(
            Column(
                col["label"],
                frozenset(Category.parse(c) for c in col["categories"]),
            )
            for col in payload["schema"]
        )
        schema = ColumnSchema(columns)
        sources = {
            d["doc_id"]: SourceDocument(
                d["doc_id"], d.get("title", ""), d.get("domain", ""),
                d.get("text", ""), tuple(d.get("sentences", ())))
            for d in payload.get("sources", [])
        }
        rows = []
        for r in payload["rows"]:
            cells = {}
            for col in schema.columns:
                text = r["cells"].get(col.label)
                cells[col.label] = Entity(text, col.members)
            rows.append(SkysetRow(
                cells=cells,
                provenance=Provenance(r["doc"], tuple(r["sentences"])),
                status=RowStatus(r.get("status", "final")),
                candidate_group=r.get("group"),
            ))
    except (KeyError, TypeError, ValueError) as exc:
        raise StoreError(f"bad table payload: {exc}") from exc
    _stub_sources(rows, sources)
    return SkysetTable(schema, rows, sources)


def json_text(table: SkysetTable) -> str:
    return json.dumps(table_to_json(table), indent=2) + "\n"


def save_json(table: SkysetTable, path: str | os.PathLike) -> None:
    Path(path).write_text(json_text(table), encoding="utf-8")


def load_json(path: str | os.PathLike) -> SkysetTable:
    with open(path, encoding="utf-8") as handle:
        return table_from_json(json.load(handle))


_FORMATS = ("tsv", "csv", "json")


def _infer_format(path: str | os.PathLike, format: str | None) -> str:
    if format is not None:
        if format not in _FORMATS:
            raise StoreError(f"unknown format {format!r}")
        return format
    suffix = Path(path).suffix.lstrip(".").casefold()
    if suffix in _FORMATS:
        return suffix
    raise StoreError(
        f"cannot infer format from {path}; pass tsv, csv, or json")


def save_table(
    table: SkysetTable, path: str | os.PathLike, *, format: str | None = None
) -> None:
    kind = _infer_format(path, format)
    if kind == "tsv":
        save_tsv(table, path)
    elif kind == "csv":
        save_csv(table, path)
    else:
        save_json(table, path)


def load_table(
    path: str | os.PathLike,
    *,
    schema: ColumnSchema,
    format: str | None = None,
) -> SkysetTable:
    kind = _infer_format(path, format)
    if kind == "tsv":
        return load_tsv(path, schema=schema)
    if kind == "csv":
        return load_csv(path, schema=schema)
    return load_json(path)
