"""Core data model: categories, column schemas, entities, rows, and tables.

A table is a grid of entities. Columns are labelled groups of one or more
categories; the standard display projection merges the eight categories into
five columns. Rows remember where they came from (document and sentence
indices) and whether they are settled or one reading among several.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .inflect import AUXILIARY_FORMS, base_form


class Category(enum.Enum):
    """The eight entity categories."""

    TOPIC_ROLE = ("TopicRole", "TR", "who or what the instruction is about")
    SERVICE = ("Service", "Serv", "the action carried out")
    PRODUCT = ("Product", "Prod", "what the action brings into being")
    RESOURCE = ("Resource", "Res", "what the action consumes or employs")
    PROCESS = ("Process", "Proc", "how the action is carried out")
    REQUIREMENT = ("Requirement", "Req", "what the action must observe")
    RECIPIENT = ("Recipient", "Recip", "who or what receives the action")
    CONDITION = ("Condition", "Cond", "when or under what circumstances")

    def __init__(self, title: str, abbreviation: str, description: str):
        self.title = title
        self.abbreviation = abbreviation
        self.description = description

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Category.{self.name}"

    @classmethod
    def parse(cls, text: str) -> "Category":
        """Accept a category by title, abbreviation, or common alias."""
        key = "".join(ch for ch in text.lower() if ch.isalnum())
        found = _CATEGORY_ALIASES.get(key)
        if found is None:
            raise ValueError(f"unknown category: {text!r}")
        return found


_CATEGORY_ALIASES: dict[str, Category] = {}
for _cat in Category:
    _CATEGORY_ALIASES["".join(c for c in _cat.title.lower() if c.isalnum())] = _cat
    _CATEGORY_ALIASES[_cat.abbreviation.lower()] = _cat
_CATEGORY_ALIASES["topic"] = Category.TOPIC_ROLE
_CATEGORY_ALIASES["role"] = Category.TOPIC_ROLE
_CATEGORY_ALIASES["topicorrole"] = Category.TOPIC_ROLE


@dataclass(frozen=True)
class Column:
    """One schema column: a display label over a set of categories."""

    label: str
    members: frozenset[Category]

    def __post_init__(self) -> None:
        if not self.label or not self.label.strip():
            raise ValueError("column label must be non-empty")
        if not self.members:
            raise ValueError(f"column {self.label!r} has no categories")


@dataclass(frozen=True)
class ColumnSchema:
    """Ordered columns whose category sets partition the category universe."""

    columns: tuple[Column, ...]

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("schema must have at least one column")
        labels = [c.label for c in self.columns]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate column labels")
        seen: set[Category] = set()
        for col in self.columns:
            overlap = seen & col.members
            if overlap:
                names = ", ".join(sorted(c.title for c in overlap))
                raise ValueError(f"categories in more than one column: {names}")
            seen |= col.members

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.columns)

    @property
    def universe(self) -> frozenset[Category]:
        out: set[Category] = set()
        for c in self.columns:
            out |= c.members
        return frozenset(out)

    def column_for(self, category: Category) -> Column:
        for col in self.columns:
            if category in col.members:
                return col
        raise KeyError(f"no column holds {category.title}")

    def column_by_label(self, label: str) -> Column:
        for col in self.columns:
            if col.label == label:
                return col
        raise KeyError(f"no column labelled {label!r}")


# Display labels for the standard five-column projection.
LABEL_TOPIC_ROLE = "TOPIC/ROLE"
LABEL_SERVICE = "SERVICE"
LABEL_PRODUCT_RESOURCE = "PRODUCT/RESOURCE"
LABEL_PROCESS_REQ_RECIPIENT = "PROCESS/REQ/RECIPIENT"
LABEL_CONDITION = "CONDITION"

QUINTUPLE_LABELS = (
    LABEL_TOPIC_ROLE,
    LABEL_SERVICE,
    LABEL_PRODUCT_RESOURCE,
    LABEL_PROCESS_REQ_RECIPIENT,
    LABEL_CONDITION,
)


def make_quintuple_schema() -> ColumnSchema:
    """The standard five-column projection of the eight categories."""
    return ColumnSchema(
        (
            Column(LABEL_TOPIC_ROLE, frozenset({Category.TOPIC_ROLE})),
            Column(LABEL_SERVICE, frozenset({Category.SERVICE})),
            Column(
                LABEL_PRODUCT_RESOURCE,
                frozenset({Category.PRODUCT, Category.RESOURCE}),
            ),
            Column(
                LABEL_PROCESS_REQ_RECIPIENT,
                frozenset(
                    {Category.PROCESS, Category.REQUIREMENT, Category.RECIPIENT}
                ),
            ),
            Column(LABEL_CONDITION, frozenset({Category.CONDITION})),
        )
    )


Span = tuple[int, int, int]  # (sentence index, first word, one past last word)


@dataclass(frozen=True)
class Entity:
    """One cell: a phrase, the categories it is filed under, and its origin.

    A null entity (text None) renders as "-" and serializes as an empty or
    null field. categories holds the subset of the column's categories the
    translation actually determined; loaders that have no such information
    use the column's full set.
    """

    text: str | None
    categories: frozenset[Category]
    span: Span | None = None

    def __post_init__(self) -> None:
        if self.text is not None:
            if not self.text.strip():
                raise ValueError("entity text must be non-empty or None")
            if "\t" in self.text or "\n" in self.text or "\r" in self.text:
                raise ValueError("entity text may not contain tabs or newlines")
        elif self.span is not None:
            raise ValueError("null entity may not carry a span")
        if self.span is not None:
            sent, start, end = self.span
            if sent < 0 or start < 0 or end <= start:
                raise ValueError(f"bad span {self.span}")

    @property
    def is_null(self) -> bool:
        return self.text is None


def null_entity(column: Column) -> Entity:
    return Entity(None, column.members)


class RowStatus(enum.Enum):
    FINAL = "final"
    CANDIDATE = "candidate"


@dataclass(frozen=True)
class Provenance:
    doc: str
    sentences: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sentences:
            raise ValueError("provenance must name at least one sentence")


@dataclass
class SkysetRow:
    """One table row: a cell per schema column plus provenance and status."""

    cells: dict[str, Entity]
    provenance: Provenance
    status: RowStatus = RowStatus.FINAL
    candidate_group: str | None = None

    def cell(self, label: str) -> Entity:
        return self.cells[label]

    def text(self, label: str) -> str | None:
        return self.cells[label].text


@dataclass(frozen=True)
class SourceDocument:
    doc_id: str
    title: str
    domain: str
    text: str
    sentences: tuple[str, ...]


@dataclass
class SkysetTable:
    schema: ColumnSchema
    rows: list[SkysetRow] = field(default_factory=list)
    sources: dict[str, SourceDocument] = field(default_factory=dict)

    def signature(self) -> tuple:
        """Canonical value capturing everything persistence must preserve.

        Derivation metadata (spans, determined category subsets) is excluded;
        two tables with equal signatures are interchangeable on disk.
        """
        return (
            tuple((c.label, tuple(sorted(m.title for m in c.members)))
                  for c in self.schema.columns),
            tuple(
                (
                    tuple((label, row.cells[label].text)
                          for label in self.schema.labels),
                    row.provenance.doc,
                    row.provenance.sentences,
                    row.status.value,
                    row.candidate_group,
                )
                for row in self.rows
            ),
            tuple(sorted(
                (d.doc_id, d.title, d.domain, d.text)
                for d in self.sources.values()
            )),
        )


def _normalize(text: str | None) -> str | None:
    if text is None:
        return None
    return " ".join(text.casefold().split())


def _normalize_service(text: str | None) -> str | None:
    """Service comparison ignores finite-verb inflection: reports ~ report."""
    norm = _normalize(text)
    if norm is None:
        return None
    words = norm.split()
    if words and words[0] not in AUXILIARY_FORMS:
        words[0] = base_form(words[0])
    return " ".join(words)


def rows_equal(a: SkysetRow, b: SkysetRow) -> bool:
    """Category-level row equality.

    True when, column for column, the two rows hold the same phrases after
    whitespace and case normalization. Column order and the rows' status or
    provenance never matter. The action column additionally ignores
    subject-number inflection so a rendered-and-retranslated row still
    matches its source.
    """
    if set(a.cells) != set(b.cells):
        return False
    for label, ea in a.cells.items():
        eb = b.cells[label]
        if ea.categories == {Category.SERVICE} or eb.categories == {Category.SERVICE}:
            if _normalize_service(ea.text) != _normalize_service(eb.text):
                return False
        elif _normalize(ea.text) != _normalize(eb.text):
            return False
    return True


@dataclass(frozen=True)
class TableViolation:
    row_index: int | None
    invariant: str
    detail: str

    def __str__(self) -> str:
        where = "schema" if self.row_index is None else f"row {self.row_index}"
        return f"{where}: {self.invariant}: {self.detail}"


def validate_table(table: SkysetTable) -> list[TableViolation]:
    """Check structural invariants; returns one violation per breach."""
    out: list[TableViolation] = []
    labels = set(table.schema.labels)

    for i, row in enumerate(table.rows):
        if set(row.cells) != labels:
            missing = labels - set(row.cells)
            extra = set(row.cells) - labels
            parts = []
            if missing:
                parts.append("missing " + ", ".join(sorted(missing)))
            if extra:
                parts.append("unexpected " + ", ".join(sorted(extra)))
            out.append(TableViolation(i, "cells match schema", "; ".join(parts)))
            continue

        for label, entity in row.cells.items():
            col = table.schema.column_by_label(label)
            if not entity.categories:
                out.append(TableViolation(
                    i, "entity categories non-empty", f"column {label}"))
            elif not entity.categories <= col.members:
                bad = ", ".join(sorted(
                    c.title for c in entity.categories - col.members))
                out.append(TableViolation(
                    i, "entity categories within column",
                    f"column {label} cannot hold {bad}"))

        doc = table.sources.get(row.provenance.doc)
        if doc is None:
            out.append(TableViolation(
                i, "provenance document registered",
                f"unknown document {row.provenance.doc!r}"))
        else:
            for s in row.provenance.sentences:
                if not 0 <= s < len(doc.sentences):
                    out.append(TableViolation(
                        i, "provenance sentence in range",
                        f"sentence {s} of {len(doc.sentences)}"))
            for entity in row.cells.values():
                if entity.span is not None:
                    sent, start, end = entity.span
                    if not 0 <= sent < len(doc.sentences):
                        out.append(TableViolation(
                            i, "span sentence in range",
                            f"sentence {sent} of {len(doc.sentences)}"))

        if (row.status is RowStatus.CANDIDATE) != (row.candidate_group is not None):
            out.append(TableViolation(
                i, "candidate status carries a group",
                f"status {row.status.value}, group {row.candidate_group!r}"))

    group_sizes: dict[str, int] = {}
    for row in table.rows:
        if row.candidate_group is not None:
            group_sizes[row.candidate_group] = group_sizes.get(row.candidate_group, 0) + 1
    for group, size in group_sizes.items():
        if size < 2:
            out.append(TableViolation(
                None, "candidate groups have rivals",
                f"group {group!r} has a single row"))
    return out
