"""End-to-end translation: text in, quintuple table out.

Stages, in order per sentence: segment, parse, fold refinement sentences
into the row they elaborate, rewrite passives around their agent, map onto
columns (possibly forking into rival readings), and strip function words.
After all sentences, rows whose condition or manner cell coordinates
alternatives with "or" are split, one row per alternative.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

from ..inflect import base_form, third_person
from ..lexicon import CueLexicon, MarkerKind, default_lexicon
from ..model import (
    Category,
    ColumnSchema,
    Entity,
    LABEL_CONDITION,
    LABEL_PROCESS_REQ_RECIPIENT,
    LABEL_SERVICE,
    Provenance,
    RowStatus,
    SkysetRow,
    SkysetTable,
    SourceDocument,
    make_quintuple_schema,
)
from .mapping import _KIND_TO_TARGET, map_to_row
from .parse import Clause, ParseError, normalize_voice, parse_clause
from .segment import segment_sentences


@dataclass(frozen=True)
class TranslationOptions:
    """Switches for the translation stages. Defaults mirror the standard
    stripped presentation; turn strip_articles off to keep surface forms."""

    strip_articles: bool = True
    strip_plural_suffix: bool = False
    normalize_passive: bool = True
    merge_refinements: bool = True
    split_alternatives: bool = True


@dataclass(frozen=True)
class TranslationIssue:
    """Something worth surfacing that is not a row: a sentence that failed
    to parse (kind "error") or a caveat about one that succeeded ("note")."""

    sentence_index: int
    message: str
    kind: str = "note"


@dataclass(frozen=True)
class CandidateSet:
    """A group of rival rows left for a human to settle."""

    group: str
    doc: str
    sentence_index: int
    size: int
    description: str


@dataclass
class TranslationResult:
    table: SkysetTable
    candidates: list[CandidateSet] = field(default_factory=list)
    issues: list[TranslationIssue] = field(default_factory=list)

    @property
    def errors(self) -> list[TranslationIssue]:
        return [i for i in self.issues if i.kind == "error"]


@lru_cache(maxsize=8)
def _article_prefixes(lexicon: CueLexicon) -> frozenset[tuple[str, str]]:
    """(word, article) pairs that open a multiword marker, e.g. ("in", "the").
    An article in that position is part of the cue and survives stripping."""
    pairs: set[tuple[str, str]] = set()
    articles = {a.casefold() for a in lexicon.articles}
    for section in (lexicon.condition_markers, lexicon.process_markers,
                    lexicon.recipient_markers, lexicon.instrument_markers):
        for phrase in section:
            parts = phrase.casefold().split()
            for k in range(1, len(parts)):
                if parts[k] in articles:
                    pairs.add((parts[k - 1], parts[k]))
    return frozenset(pairs)


def strip_entity(
    entity: Entity,
    lexicon: CueLexicon,
    *,
    strip_articles: bool = True,
    service_base: bool = False,
) -> Entity:
    """Drop articles from a cell phrase, keeping those embedded in a
    multiword cue ("in the autumn" keeps its "the"). With service_base the
    leading word is reduced to its base verb form. A phrase that would strip
    to nothing is left alone."""
    if entity.is_null:
        return entity
    words = entity.text.split()
    if strip_articles:
        keep = _article_prefixes(lexicon)
        kept = [
            w for i, w in enumerate(words)
            if not lexicon.is_article(w)
            or (i > 0 and (words[i - 1].casefold(), w.casefold()) in keep)
        ]
        if kept:
            words = kept
    if service_base and words:
        words[0] = base_form(words[0])
    text = " ".join(words)
    if text == entity.text:
        return entity
    return replace(entity, text=text)


def strip_function_words(
    row: SkysetRow,
    lexicon: CueLexicon,
    *,
    strip_articles: bool = True,
    strip_plural_suffix: bool = False,
) -> SkysetRow:
    cells = {
        label: strip_entity(
            entity, lexicon,
            strip_articles=strip_articles,
            service_base=(
                strip_plural_suffix
                and entity.categories == frozenset({Category.SERVICE})
            ),
        )
        for label, entity in row.cells.items()
    }
    return replace(row, cells=cells)


def _refinement_targets(service_head: str) -> frozenset[str]:
    """Word forms under which a later sentence may refer back to an action:
    the verb itself, its inflections, and common nominalizations."""
    base = base_form(service_head).casefold()
    forms = {base, third_person(base), base + "ing", base + "ment",
             base + "ion", base + "ation", base + "al"}
    if base.endswith("e"):
        stem = base[:-1]
        forms |= {stem + "ing", stem + "ion", stem + "ation"}
    return frozenset(forms)


def refines(clause: Clause, service_text: str | None) -> bool:
    """Does a refinement clause elaborate the action named by service_text?"""
    if not service_text:
        return False
    targets = _refinement_targets(service_text.split()[0])
    heads = {clause.subject.words[-1].casefold(),
             base_form(clause.verb.head).casefold()}
    return bool(heads & targets)


def _merge_refinement(rows: list[SkysetRow], clause: Clause) -> None:
    """Fold the refinement clause's marker phrases into earlier rows.

    Each phrase lands in the column its marker selects, appended after any
    existing cell text. Merged cells lose their spans (the words now come
    from two sentences); provenance gains the refinement sentence.
    """
    for row in rows:
        cells = dict(row.cells)
        for phrase in clause.trailing:
            if phrase.kind is None:
                continue
            label, cats = _KIND_TO_TARGET[phrase.kind]
            old = cells[label]
            if old.is_null:
                cells[label] = Entity(phrase.text, cats)
            else:
                cells[label] = Entity(
                    f"{old.text} {phrase.text}", old.categories | cats)
        # In-place: the same row objects live in the table's row list.
        row.cells = cells
        row.provenance = replace(
            row.provenance,
            sentences=row.provenance.sentences + (clause.sentence_index,))


_COLUMN_SPLIT_KINDS: dict[str, frozenset[MarkerKind]] = {
    LABEL_CONDITION: frozenset({MarkerKind.CONDITION}),
    LABEL_PROCESS_REQ_RECIPIENT: frozenset(
        {MarkerKind.PROCESS, MarkerKind.RECIPIENT, MarkerKind.INSTRUMENT}),
}


def _split_cell(
    entity: Entity, kinds: frozenset[MarkerKind], lexicon: CueLexicon
) -> list[Entity]:
    """Split "X or <marker> Y" into [X, <marker> Y]; several "or"s chain."""
    if entity.is_null:
        return [entity]
    words = entity.text.split()
    cuts = [
        i for i in range(1, len(words) - 1)
        if words[i].casefold() == "or"
        and (m := lexicon.match_marker(words, i + 1)) is not None
        and m.kind in kinds
    ]
    if not cuts:
        return [entity]
    parts: list[Entity] = []
    bounds = [-1] + cuts + [len(words)]
    for a, b in zip(bounds[:-1], bounds[1:]):
        piece = words[a + 1:b]
        if piece:
            parts.append(Entity(" ".join(piece), entity.categories))
    return parts if len(parts) > 1 else [entity]


def split_alternatives(
    rows: list[SkysetRow], lexicon: CueLexicon
) -> list[SkysetRow]:
    """One row per coordinated alternative in a condition or manner cell.

    Candidate rows are left untouched: splitting rivals would multiply the
    choices a reviewer has to resolve.
    """
    out: list[SkysetRow] = []
    for row in rows:
        if row.status is not RowStatus.FINAL:
            out.append(row)
            continue
        expanded = [row]
        for label, kinds in _COLUMN_SPLIT_KINDS.items():
            next_rows: list[SkysetRow] = []
            for r in expanded:
                pieces = _split_cell(r.cells[label], kinds, lexicon)
                if len(pieces) == 1:
                    next_rows.append(r)
                    continue
                for piece in pieces:
                    cells = dict(r.cells)
                    cells[label] = piece
                    next_rows.append(replace(r, cells=cells))
            expanded = next_rows
        out.extend(expanded)
    return out


def translate_document(
    text: str,
    *,
    doc_id: str = "doc",
    title: str = "",
    domain: str = "",
    options: TranslationOptions | None = None,
    lexicon: CueLexicon | None = None,
    schema: ColumnSchema | None = None,
) -> TranslationResult:
    """Translate instructional text into a quintuple table.

    Sentences that fail to parse become issues, not rows; the rest of the
    document still translates. Sentences with rival readings produce
    adjacent rows sharing a candidate group named "<doc_id>:s<index>".
    """
    if options is None:
        options = TranslationOptions()
    if lexicon is None:
        lexicon = default_lexicon()
    if schema is None:
        schema = make_quintuple_schema()

    sentences = segment_sentences(text)
    doc = SourceDocument(doc_id, title, domain, text, tuple(sentences))
    table = SkysetTable(schema, [], {doc_id: doc})
    result = TranslationResult(table)

    previous: list[SkysetRow] = []  # rows from the last mapped sentence
    for i, sentence in enumerate(sentences):
        try:
            clause = parse_clause(sentence, index=i, lexicon=lexicon)
        except ParseError as exc:
            result.issues.append(TranslationIssue(i, str(exc), "error"))
            previous = []
            continue

        if (options.merge_refinements and clause.lead_marker and previous
                and refines(clause, previous[0].text(LABEL_SERVICE))):
            _merge_refinement(previous, clause)
            for row in previous:
                row.cells = strip_function_words(
                    row, lexicon,
                    strip_articles=options.strip_articles,
                    strip_plural_suffix=options.strip_plural_suffix,
                ).cells
            result.issues.append(TranslationIssue(
                i, f"refinement folded into sentence "
                   f"{previous[0].provenance.sentences[0]}"))
            continue

        if options.normalize_passive:
            clause = normalize_voice(clause)
        for note in clause.notes:
            result.issues.append(TranslationIssue(i, note))

        drafts, fork = map_to_row(clause, schema=schema, lexicon=lexicon)
        for draft in drafts:
            for note in draft.notes:
                result.issues.append(TranslationIssue(i, note))

        group = None
        status = RowStatus.FINAL
        if len(drafts) > 1:
            group = f"{doc_id}:s{i}"
            status = RowStatus.CANDIDATE
            assert fork is not None
            result.candidates.append(CandidateSet(
                group, doc_id, i, len(drafts), fork.text))

        previous = []
        for draft in drafts:
            row = SkysetRow(
                cells=draft.cells,
                provenance=Provenance(doc_id, (i,)),
                status=status,
                candidate_group=group,
            )
            row = strip_function_words(
                row, lexicon,
                strip_articles=options.strip_articles,
                strip_plural_suffix=options.strip_plural_suffix,
            )
            table.rows.append(row)
            previous.append(row)

    if options.split_alternatives:
        table.rows = split_alternatives(table.rows, lexicon)
    return result
