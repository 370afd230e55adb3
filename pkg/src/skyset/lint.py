"""Findings over translated tables: ambiguity, incompleteness, vagueness.

Ambiguous: a sentence produced rival rows that a reviewer must resolve.
Incomplete: a row leaves a required category unstated.
Vague: a cell's head noun is a glossary class covering several members.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine.pipeline import TranslationResult
from .inflect import base_form
from .lexicon import CueLexicon, Glossary, default_lexicon
from .model import Category, LABEL_SERVICE, RowStatus, SkysetRow, SkysetTable

KIND_AMBIGUOUS = "Ambiguous"
KIND_INCOMPLETE = "Incomplete"
KIND_VAGUE = "Vague"

_KIND_RANK = {KIND_AMBIGUOUS: 0, KIND_INCOMPLETE: 1, KIND_VAGUE: 2}

DEFAULT_REQUIRED = frozenset({Category.TOPIC_ROLE, Category.SERVICE})


@dataclass(frozen=True)
class Finding:
    kind: str
    doc: str
    sentence_index: int
    column: str | None
    detail: str
    suggestions: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "doc": self.doc,
            "sentence": self.sentence_index,
            "column": self.column,
            "detail": self.detail,
            "suggestions": list(self.suggestions),
        }


def _sort_key(f: Finding) -> tuple:
    return (f.doc, f.sentence_index, _KIND_RANK.get(f.kind, 9), f.column or "")


def _ambiguity_findings(
    table: SkysetTable, descriptions: dict[str, str]
) -> list[Finding]:
    seen: set[str] = set()
    out: list[Finding] = []
    for row in table.rows:
        group = row.candidate_group
        if group is None or group in seen:
            continue
        seen.add(group)
        size = sum(1 for r in table.rows if r.candidate_group == group)
        detail = descriptions.get(
            group, f"{size} rival readings left unresolved")
        out.append(Finding(
            KIND_AMBIGUOUS, row.provenance.doc, row.provenance.sentences[0],
            None, detail))
    return out


def _missing_in_row(
    row: SkysetRow, table: SkysetTable, required: frozenset[Category]
) -> dict[str, list[Category]]:
    """Required categories the row leaves unstated, grouped by column label.

    A category counts as stated only when some entity in the row carries
    it; a column may be occupied by a sibling category ("by email" fills
    the shared column as Process without naming any Recipient).
    """
    missing: dict[str, list[Category]] = {}
    for cat in sorted(required, key=lambda c: c.title):
        col = table.schema.column_for(cat)
        entity = row.cells[col.label]
        if entity.is_null or cat not in entity.categories:
            missing.setdefault(col.label, []).append(cat)
    return missing


def _incompleteness_findings(
    table: SkysetTable, required: frozenset[Category]
) -> list[Finding]:
    out: list[Finding] = []

    def emit(row: SkysetRow, by_column: dict[str, list[Category]]) -> None:
        for label, cats in by_column.items():
            names = ", ".join(c.title for c in cats)
            out.append(Finding(
                KIND_INCOMPLETE, row.provenance.doc,
                row.provenance.sentences[0], label,
                f"no {names} stated"))

    for row in table.rows:
        if row.status is RowStatus.FINAL:
            emit(row, _missing_in_row(row, table, required))

    # A candidate group is incomplete only when every rival misses the
    # category; otherwise resolving the group can supply it.
    groups: dict[str, list[SkysetRow]] = {}
    for row in table.rows:
        if row.candidate_group is not None:
            groups.setdefault(row.candidate_group, []).append(row)
    for rows in groups.values():
        per_row = [_missing_in_row(r, table, required) for r in rows]
        common: dict[str, list[Category]] = {}
        for label, cats in per_row[0].items():
            shared = [
                c for c in cats
                if all(label in m and c in m[label] for m in per_row[1:])
            ]
            if shared:
                common[label] = shared
        emit(rows[0], common)
    return out


def _head_noun(text: str, lexicon: CueLexicon) -> str | None:
    """The last word before the first embedded marker, singularized.
    "critique assessment forms" gives "form"; "utensil" gives itself."""
    words = text.split()
    end = len(words)
    for i in range(1, len(words)):
        if lexicon.match_marker(words, i) is not None:
            end = i
            break
    if end == 0:
        return None
    head = words[end - 1].casefold()
    return base_form(head) if head.endswith("s") else head


def _vagueness_findings(
    table: SkysetTable, glossary: Glossary, lexicon: CueLexicon
) -> list[Finding]:
    out: list[Finding] = []
    for row in table.rows:
        for label in table.schema.labels:
            if label == LABEL_SERVICE:
                continue
            entity = row.cells[label]
            if entity.is_null:
                continue
            head = _head_noun(entity.text, lexicon)
            if head is None:
                continue
            members = glossary.lookup(head)
            if members is None or len(members) < 2:
                continue
            out.append(Finding(
                KIND_VAGUE, row.provenance.doc, row.provenance.sentences[0],
                label,
                f"{head!r} names a class with {len(members)} members",
                tuple(members)))
    return out


def lint_table(
    table: SkysetTable,
    *,
    required: frozenset[Category] = DEFAULT_REQUIRED,
    glossary: Glossary | None = None,
    descriptions: dict[str, str] | None = None,
    lexicon: CueLexicon | None = None,
) -> list[Finding]:
    """All findings for a table, ordered by document, sentence, and kind."""
    if not required:
        raise ValueError("required categories must not be empty; a lint "
                         "pass that requires nothing finds nothing")
    if lexicon is None:
        lexicon = default_lexicon()
    findings = _ambiguity_findings(table, descriptions or {})
    findings += _incompleteness_findings(table, required)
    if glossary is not None:
        findings += _vagueness_findings(table, glossary, lexicon)
    findings.sort(key=_sort_key)
    return findings


def lint_result(
    result: TranslationResult,
    *,
    required: frozenset[Category] = DEFAULT_REQUIRED,
    glossary: Glossary | None = None,
    lexicon: CueLexicon | None = None,
) -> list[Finding]:
    descriptions = {c.group: c.description for c in result.candidates}
    return lint_table(
        result.table, required=required, glossary=glossary,
        descriptions=descriptions, lexicon=lexicon)


def findings_to_json(findings: list[Finding]) -> list[dict]:
    return [f.to_json() for f in findings]


def format_findings(findings: list[Finding]) -> str:
    """One line per finding, stable across runs."""
    if not findings:
        return "no findings"
    lines = []
    for f in findings:
        where = f"{f.doc}:s{f.sentence_index}"
        if f.column:
            where += f":{f.column}"
        line = f"{f.kind:<10} {where}: {f.detail}"
        if f.suggestions:
            line += " (try: " + ", ".join(f.suggestions) + ")"
        lines.append(line)
    return "\n".join(lines)
