"""Clause-to-row mapping and candidate forking."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..inflect import base_form
from ..lexicon import CueLexicon, MarkerKind
from ..model import (
    Category,
    ColumnSchema,
    Entity,
    LABEL_CONDITION,
    LABEL_PROCESS_REQ_RECIPIENT,
    LABEL_PRODUCT_RESOURCE,
    LABEL_SERVICE,
    LABEL_TOPIC_ROLE,
)
from .parse import Clause, TrailingPhrase, Voice

# Verbs whose direct object is something brought into being.
CREATION_VERBS = frozenset(
    {"build", "construct", "create", "make", "produce", "manufacture",
     "assemble", "write", "compose", "bake", "erect"}
)
# Verbs that defer the real action to an infinitive purpose phrase:
# "use the library to study" acts through "study" on the library.
LIGHT_VERBS = frozenset({"use", "utilize", "employ"})

_KIND_TO_TARGET: dict[MarkerKind, tuple[str, frozenset[Category]]] = {
    MarkerKind.CONDITION: (LABEL_CONDITION, frozenset({Category.CONDITION})),
    MarkerKind.PROCESS: (
        LABEL_PROCESS_REQ_RECIPIENT, frozenset({Category.PROCESS})),
    MarkerKind.RECIPIENT: (
        LABEL_PROCESS_REQ_RECIPIENT, frozenset({Category.RECIPIENT})),
    MarkerKind.INSTRUMENT: (
        LABEL_PROCESS_REQ_RECIPIENT, frozenset({Category.PROCESS})),
}


@dataclass
class DraftRow:
    """A mapped row before status and provenance bookkeeping."""

    cells: dict[str, Entity]
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class ForkDescription:
    """Human-readable account of why a sentence produced several readings."""

    phrase: str
    alternatives: tuple[str, ...]

    @property
    def text(self) -> str:
        options = " or ".join(self.alternatives)
        return f"{self.phrase!r} may be {options}"


@dataclass(frozen=True)
class _Piece:
    label: str
    categories: frozenset[Category]
    words: tuple[str, ...]
    span: tuple[int, int] | None


def _merge_pieces(
    pieces: list[_Piece], schema: ColumnSchema, sentence: int
) -> dict[str, Entity]:
    cells: dict[str, Entity] = {}
    for col in schema.columns:
        mine = [p for p in pieces if p.label == col.label]
        if not mine:
            cells[col.label] = Entity(None, col.members)
            continue
        words: list[str] = []
        cats: set[Category] = set()
        for p in mine:
            words.extend(p.words)
            cats |= p.categories
        spans = [p.span for p in mine]
        merged: tuple[int, int] | None = None
        if all(s is not None for s in spans):
            merged = spans[0]
            for s in spans[1:]:
                if merged is not None and s[0] == merged[1]:
                    merged = (merged[0], s[1])
                else:
                    merged = None
                    break
        full_span = (sentence, *merged) if merged is not None else None
        cells[col.label] = Entity(" ".join(words), frozenset(cats), full_span)
    return cells


def _object_target(clause: Clause) -> tuple[str, frozenset[Category]]:
    if clause.object_is_recipient:
        return LABEL_PROCESS_REQ_RECIPIENT, frozenset({Category.RECIPIENT})
    if base_form(clause.verb.head).casefold() in CREATION_VERBS:
        return LABEL_PRODUCT_RESOURCE, frozenset({Category.PRODUCT})
    return LABEL_PRODUCT_RESOURCE, frozenset(
        {Category.PRODUCT, Category.RESOURCE})


def _service_words(clause: Clause) -> tuple[str, ...]:
    # Modals are dropped; auxiliaries survive only in a clause left passive.
    words = list(clause.verb.auxiliaries)
    words.append(clause.verb.head)
    if clause.verb.particle:
        words.append(clause.verb.particle)
    return tuple(words)


def _light_verb_rewrite(clause: Clause) -> Clause | None:
    """Rewrite "use X to <verb>": the infinitive becomes the action and X
    stays in place as a resource. Returns the rewritten clause or None."""
    if base_form(clause.verb.head).casefold() not in LIGHT_VERBS:
        return None
    if clause.obj is None or not clause.trailing:
        return None
    first = clause.trailing[0]
    if first.kind is not MarkerKind.RECIPIENT or len(first.body_words) != 1:
        return None
    verb = replace(
        clause.verb,
        words=first.body_words,
        span=None,
        head=first.body_words[0],
        particle=None,
    )
    return replace(clause, verb=verb, trailing=clause.trailing[1:])


def _map_single(clause: Clause, schema: ColumnSchema,
                *, object_as_resource: bool = False) -> DraftRow:
    pieces: list[_Piece] = []
    notes: list[str] = []

    pieces.append(_Piece(
        LABEL_TOPIC_ROLE, frozenset({Category.TOPIC_ROLE}),
        clause.subject.words, clause.subject.span))
    pieces.append(_Piece(
        LABEL_SERVICE, frozenset({Category.SERVICE}),
        _service_words(clause), clause.verb.span))

    if clause.obj is not None:
        if object_as_resource:
            label, cats = LABEL_PRODUCT_RESOURCE, frozenset({Category.RESOURCE})
        else:
            label, cats = _object_target(clause)
        pieces.append(_Piece(label, cats, clause.obj.words, clause.obj.span))

    for phrase in clause.trailing:
        if phrase.kind is None:
            col = schema.column_by_label(LABEL_PROCESS_REQ_RECIPIENT)
            pieces.append(_Piece(
                LABEL_PROCESS_REQ_RECIPIENT, col.members,
                phrase.words, phrase.span))
            notes.append(f"unclaimed phrase {phrase.text!r} filed under "
                         f"{LABEL_PROCESS_REQ_RECIPIENT}")
        else:
            label, cats = _KIND_TO_TARGET[phrase.kind]
            pieces.append(_Piece(label, cats, phrase.words, phrase.span))

    if clause.voice is Voice.PASSIVE:
        notes.append("clause left passive: no agent to promote")

    cells = _merge_pieces(pieces, schema, clause.sentence_index)
    return DraftRow(cells=cells, notes=notes)


def map_to_row(
    clause: Clause, *, schema: ColumnSchema, lexicon: CueLexicon
) -> tuple[list[DraftRow], ForkDescription | None]:
    """Project a clause onto schema columns.

    Returns one draft normally; two when the sentence supports rival
    attachments (verb-particle or instrument placement), together with a
    description of what differs between the readings.
    """
    rewritten = _light_verb_rewrite(clause)
    if rewritten is not None:
        return [_map_single(rewritten, schema, object_as_resource=True)], None

    if clause.verb.spatial_fork:
        return _spatial_fork(clause, schema)

    instrument = _instrument_fork(clause, schema)
    if instrument is not None:
        return instrument

    return [_map_single(clause, schema)], None


def _spatial_fork(
    clause: Clause, schema: ColumnSchema
) -> tuple[list[DraftRow], ForkDescription]:
    """"looks over the wall": particle verb with an object, or plain verb
    with a trailing phrase."""
    particle = clause.verb.particle or ""
    draft_a = _map_single(clause, schema)

    alt_verb = replace(
        clause.verb,
        words=tuple(w for w in clause.verb.words if w != particle),
        particle=None,
        spatial_fork=False,
    )
    phrase_words: tuple[str, ...] = (particle,)
    if clause.verb.span is not None:
        span = (clause.verb.span[1] - 1, clause.verb.span[1])
    else:
        span = (0, 1)
    if clause.obj is not None:
        phrase_words += clause.obj.words
        span = (clause.obj.span[0] - 1, clause.obj.span[1])
    alt_trailing = (TrailingPhrase(
        kind=MarkerKind.PROCESS, marker=particle.casefold(),
        words=phrase_words, span=span),) + clause.trailing
    alt = replace(clause, verb=alt_verb, obj=None, trailing=alt_trailing)
    draft_b = _map_single(alt, schema)

    verb_with = " ".join(_service_words(clause))
    fork = ForkDescription(
        phrase=" ".join(phrase_words),
        alternatives=(
            f"the object of {verb_with!r}",
            f"a {LABEL_PROCESS_REQ_RECIPIENT} phrase under {clause.verb.head!r}",
        ),
    )
    return [draft_a, draft_b], fork


def _instrument_fork(
    clause: Clause, schema: ColumnSchema
) -> tuple[list[DraftRow], ForkDescription] | None:
    """Fork when a "with" phrase directly follows a recipient noun phrase:
    a resource of the action, or part of the recipient itself."""
    for i, phrase in enumerate(clause.trailing):
        if phrase.kind is not MarkerKind.INSTRUMENT:
            continue
        prev_end: int | None = None
        if i == 0 and clause.object_is_recipient and clause.obj is not None:
            prev_end = clause.obj.span[1]
        elif i > 0 and clause.trailing[i - 1].kind is MarkerKind.RECIPIENT:
            prev_end = clause.trailing[i - 1].span[1]
        if prev_end is None or phrase.span[0] != prev_end:
            continue

        # Reading A: instrument is a resource of the action.
        without = replace(clause, trailing=tuple(
            p for j, p in enumerate(clause.trailing) if j != i))
        draft_a = _map_single(without, schema)
        existing = draft_a.cells[LABEL_PRODUCT_RESOURCE]
        if existing.is_null:
            span = (clause.sentence_index, *phrase.span)
            draft_a.cells[LABEL_PRODUCT_RESOURCE] = Entity(
                phrase.text, frozenset({Category.RESOURCE}), span)
        else:
            draft_a.cells[LABEL_PRODUCT_RESOURCE] = Entity(
                f"{existing.text} {phrase.text}",
                existing.categories | {Category.RESOURCE}, None)

        # Reading B: instrument modifies the recipient; retagging the phrase
        # merges it into the recipient cell (the pieces are adjacent).
        retagged = replace(phrase, kind=MarkerKind.RECIPIENT)
        attached = replace(clause, trailing=tuple(
            retagged if j == i else p
            for j, p in enumerate(clause.trailing)))
        draft_b = _map_single(attached, schema)

        fork = ForkDescription(
            phrase=phrase.text,
            alternatives=(
                f"a resource under {LABEL_PRODUCT_RESOURCE}",
                f"part of the recipient under {LABEL_PROCESS_REQ_RECIPIENT}",
            ),
        )
        return [draft_a, draft_b], fork
    return None
