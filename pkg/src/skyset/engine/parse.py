"""Shallow clause parsing driven by cue words, not a statistical parser.

The parse finds a subject / verb group / object skeleton and segments
everything after the object into marker-led trailing phrases. Verb location
uses three anchors in order: a modal auxiliary, a passive auxiliary followed
by a participle, and finally a number-agreement alternation between adjacent
words (singular noun + inflected verb, or plural noun + base verb).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from ..inflect import base_from_participle, finite_form, is_participle, looks_plural
from ..lexicon import CueLexicon, MarkerKind

# Spatial prepositions directly after the verb are genuinely ambiguous
# (verb-particle vs. phrase head) and fork the parse downstream.
SPATIAL_PARTICLES = frozenset({"over", "under", "around", "through", "across"})
# Pure particles always belong to the verb.
PURE_PARTICLES = frozenset({"out", "up", "off", "down", "away"})

# Nouns that make an "in the"/"by the" phrase a condition rather than a
# process step.
TEMPORAL_NOUNS = frozenset(
    {"summer", "autumn", "winter", "spring", "fall", "week", "month", "year",
     "day", "morning", "afternoon", "evening", "night", "semester", "term",
     "hour", "minute", "moment", "time"}
)

# Heads that keep a passive "by" phrase a delivery/means step instead of an
# agent ("by email" refines the process; "by the student" names the actor).
MEANS_NOUNS = frozenset(
    {"email", "courier", "mail", "post", "phone", "fax", "hand", "messenger",
     "telegram", "letter"}
)

# Words that never anchor an agreement alternation.
_NON_CONTENT = frozenset({"of", "and", "or", "for", "nor", "but"})
# Agentive/plural suffixes that mark a word as a noun, not a verb.
_NOUNISH_SUFFIXES = ("ers", "ors", "ists", "ians")


class Voice(enum.Enum):
    ACTIVE = "active"
    PASSIVE = "passive"


class ParseError(ValueError):
    def __init__(self, message: str, sentence_index: int = 0):
        super().__init__(message)
        self.sentence_index = sentence_index


class NoVerbFound(ParseError):
    pass


@dataclass(frozen=True)
class Phrase:
    words: tuple[str, ...]
    span: tuple[int, int]  # word index range within the sentence, end exclusive

    @property
    def text(self) -> str:
        return " ".join(self.words)


@dataclass(frozen=True)
class TrailingPhrase:
    kind: MarkerKind | None  # None: unclaimed words with no marker
    marker: str
    words: tuple[str, ...]  # marker words included
    span: tuple[int, int]
    fronted: bool = False

    @property
    def text(self) -> str:
        return " ".join(self.words)

    @property
    def body_words(self) -> tuple[str, ...]:
        n = len(self.marker.split()) if self.marker else 0
        return self.words[n:]


@dataclass(frozen=True)
class VerbGroup:
    words: tuple[str, ...]  # surface words: modal, auxiliaries, head, particle
    span: tuple[int, int] | None
    head: str  # the lexical verb as it appears in the sentence
    modal: str | None = None
    auxiliaries: tuple[str, ...] = ()
    particle: str | None = None
    voice: Voice = Voice.ACTIVE
    spatial_fork: bool = False


@dataclass(frozen=True)
class Clause:
    sentence_index: int
    words: tuple[str, ...]
    subject: Phrase
    verb: VerbGroup
    obj: Phrase | None
    object_is_recipient: bool
    trailing: tuple[TrailingPhrase, ...]
    lead_marker: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def voice(self) -> Voice:
        return self.verb.voice


def tokenize(sentence: str) -> tuple[list[str], set[int]]:
    """Split into words, recording which word indices carried a comma."""
    words: list[str] = []
    commas: set[int] = set()
    raw_tokens = sentence.split()
    for pos, raw in enumerate(raw_tokens):
        token = raw.strip("\"'()[]")
        had_comma = token.endswith((",", ";", ":"))
        token = token.rstrip(",;:")
        if pos == len(raw_tokens) - 1:
            token = token.rstrip(".?!")
        if not token:
            continue
        words.append(token)
        if had_comma:
            commas.add(len(words) - 1)
    return words, commas


def _ends_s(word: str) -> bool:
    w = word.casefold()
    return w.endswith("s") and not w.endswith("ss")


def _could_be_verb(word: str) -> bool:
    w = word.casefold()
    if w in _NON_CONTENT or len(w) < 2 or not w[0].isalpha():
        return False
    return not w.endswith(_NOUNISH_SUFFIXES)


def _first_marker_at_or_after(
    words: list[str], start: int, limit: int, lexicon: CueLexicon
) -> int:
    for i in range(start, limit):
        if lexicon.match_marker(words, i) is not None:
            return i
    return limit


def _find_verb_by_alternation(
    words: list[str], start: int, limit: int, lexicon: CueLexicon
) -> int | None:
    for i in range(start + 1, limit):
        prev, cur = words[i - 1], words[i]
        if lexicon.is_article(prev) or prev.casefold() in _NON_CONTENT:
            continue
        if lexicon.is_article(cur):
            continue
        if _ends_s(prev) == _ends_s(cur):
            continue
        if _ends_s(cur) and not _could_be_verb(cur):
            continue
        if not _could_be_verb(cur):
            continue
        return i
    return None


def parse_clause(sentence: str, *, index: int = 0,
                 lexicon: CueLexicon) -> Clause:
    """Parse one sentence into a Clause; raises ParseError when no verb anchors."""
    words, commas = tokenize(sentence)
    if not words:
        raise ParseError("empty sentence", index)

    start = 0
    notes: list[str] = []

    lead_marker: str | None = None
    consumed = lexicon.match_refinement(words, start)
    if consumed:
        lead_marker = " ".join(words[start:start + consumed]).casefold()
        start += consumed

    # Fronted marker phrases set off by a comma move to the trailing list.
    fronted: list[TrailingPhrase] = []
    while start < len(words):
        m = lexicon.match_marker(words, start)
        if m is None or m.kind is MarkerKind.RECIPIENT:
            break
        comma_at = next(
            (i for i in range(start + m.length - 1, len(words)) if i in commas),
            None,
        )
        if comma_at is None:
            break
        fronted.append(TrailingPhrase(
            kind=m.kind, marker=m.phrase,
            words=tuple(words[start:comma_at + 1]),
            span=(start, comma_at + 1), fronted=True))
        start = comma_at + 1

    if start >= len(words):
        raise NoVerbFound("sentence is only marker phrases", index)

    limit = _first_marker_at_or_after(words, start, len(words), lexicon)

    # Verb anchors, strongest first.
    modal_idx = next(
        (i for i in range(start, limit) if lexicon.is_modal(words[i])), None)
    verb_idx: int
    modal: str | None = None
    auxiliaries: list[str] = []
    voice = Voice.ACTIVE

    if modal_idx is not None:
        modal = words[modal_idx]
        j = modal_idx + 1
        while j < len(words) and lexicon.is_passive_auxiliary(words[j]):
            auxiliaries.append(words[j])
            j += 1
        if j >= len(words):
            raise NoVerbFound("modal with no verb", index)
        verb_idx = j
        if auxiliaries and is_participle(words[j]):
            voice = Voice.PASSIVE
    else:
        aux_idx = next(
            (i for i in range(start + 1, limit)
             if lexicon.is_passive_auxiliary(words[i])), None)
        if aux_idx is not None:
            j = aux_idx + 1
            while j < len(words) and lexicon.is_passive_auxiliary(words[j]):
                j += 1
            auxiliaries = list(words[aux_idx:j])
            if j < len(words) and is_participle(words[j]):
                voice = Voice.PASSIVE
                verb_idx = j
            else:
                # Copular: the auxiliary itself is the verb.
                auxiliaries = []
                verb_idx = aux_idx
        else:
            found = _find_verb_by_alternation(words, start, limit, lexicon)
            if found is None:
                raise NoVerbFound(f"no verb found in {sentence!r}", index)
            verb_idx = found

    subject_words = words[start:verb_idx - len(auxiliaries) - (1 if modal else 0)]
    subj_end = start + len(subject_words)
    if not subject_words:
        raise ParseError("no subject before verb", index)
    subject = Phrase(tuple(subject_words), (start, subj_end))

    head = words[verb_idx]
    verb_end = verb_idx + 1

    # Particle absorption.
    particle: str | None = None
    spatial_fork = False
    object_is_recipient = False
    if verb_end < len(words):
        nxt = words[verb_end].casefold()
        if voice is Voice.ACTIVE and nxt == "to":
            particle, object_is_recipient = words[verb_end], True
            verb_end += 1
        elif voice is Voice.ACTIVE and nxt in SPATIAL_PARTICLES:
            particle, spatial_fork = words[verb_end], True
            verb_end += 1
        elif nxt in PURE_PARTICLES:
            particle = words[verb_end]
            verb_end += 1

    group_start = modal_idx if modal is not None else verb_idx - len(auxiliaries)
    verb = VerbGroup(
        words=tuple(words[group_start:verb_end]),
        span=(group_start, verb_end),
        head=head,
        modal=modal,
        auxiliaries=tuple(auxiliaries),
        particle=particle,
        voice=voice,
        spatial_fork=spatial_fork,
    )

    obj_limit = _first_marker_at_or_after(words, verb_end, len(words), lexicon)
    obj = None
    if obj_limit > verb_end:
        obj = Phrase(tuple(words[verb_end:obj_limit]), (verb_end, obj_limit))

    trailing = fronted + _segment_trailing(words, obj_limit, lexicon)
    trailing = [_apply_temporal_gate(p) for p in trailing]

    return Clause(
        sentence_index=index,
        words=tuple(words),
        subject=subject,
        verb=verb,
        obj=obj,
        object_is_recipient=object_is_recipient,
        trailing=tuple(trailing),
        lead_marker=lead_marker,
        notes=tuple(notes),
    )


_SPLIT_KINDS = frozenset(
    {MarkerKind.CONDITION, MarkerKind.PROCESS, MarkerKind.INSTRUMENT})
_COORDINATORS = frozenset({"or", "and"})


def _segment_trailing(
    words: list[str], start: int, lexicon: CueLexicon
) -> list[TrailingPhrase]:
    """Chop words[start:] into marker-led phrases.

    Condition, process, and instrument markers open a new phrase anywhere;
    the recipient marker only opens the first one (a bare "to" inside
    "upon return to the colony" must not split the phrase). A marker right
    after a coordinator stays put so row splitting can see the alternation.
    """
    phrases: list[TrailingPhrase] = []
    cur_words: list[str] = []
    cur_start = start
    cur_kind: MarkerKind | None = None
    cur_marker = ""

    def close(end: int) -> None:
        nonlocal cur_words
        if cur_words:
            phrases.append(TrailingPhrase(
                kind=cur_kind, marker=cur_marker,
                words=tuple(cur_words), span=(cur_start, end)))
        cur_words = []

    i = start
    while i < len(words):
        m = lexicon.match_marker(words, i)
        opens = False
        if m is not None:
            if not cur_words and not phrases and i == start:
                opens = True
            elif m.kind in _SPLIT_KINDS and \
                    words[i - 1].casefold() not in _COORDINATORS:
                opens = True
        if opens:
            close(i)
            cur_start, cur_kind, cur_marker = i, m.kind, m.phrase
            cur_words = list(words[i:i + m.length])
            i += m.length
        else:
            if not cur_words:
                cur_start, cur_kind, cur_marker = i, None, ""
            cur_words.append(words[i])
            i += 1
    close(len(words))
    return phrases


def _apply_temporal_gate(phrase: TrailingPhrase) -> TrailingPhrase:
    """"in the"/"by the" phrases are conditions only with a temporal head."""
    if phrase.kind is not MarkerKind.CONDITION:
        return phrase
    if phrase.marker not in ("in the", "by the"):
        return phrase
    if any(w.casefold() in TEMPORAL_NOUNS for w in phrase.body_words):
        return phrase
    return replace(phrase, kind=MarkerKind.PROCESS)


def _agent_phrase_index(clause: Clause) -> int | None:
    for i in range(len(clause.trailing) - 1, -1, -1):
        p = clause.trailing[i]
        if p.kind is MarkerKind.PROCESS and p.marker.split()[:1] == ["by"]:
            body = p.body_words
            if body and body[-1].casefold() not in MEANS_NOUNS:
                return i
    return None


def normalize_voice(clause: Clause) -> Clause:
    """Rewrite a passive clause as active when a "by" agent names the actor.

    The agent becomes the subject, the old subject the object, and the
    participle is re-inflected to agree with the new subject. Without an
    agent the clause stays passive and is flagged.
    """
    if clause.voice is Voice.ACTIVE:
        return clause
    agent_idx = _agent_phrase_index(clause)
    if agent_idx is None:
        return replace(clause, notes=clause.notes + ("agentless-passive",))

    agent = clause.trailing[agent_idx]
    marker_len = len(agent.marker.split())
    subject = Phrase(agent.body_words,
                     (agent.span[0] + marker_len, agent.span[1]))
    base = base_from_participle(clause.verb.head) or clause.verb.head
    if clause.verb.modal:
        head = base
    else:
        head = finite_form(base, looks_plural(subject.words[-1]))
    group_words = ([clause.verb.modal] if clause.verb.modal else []) + [head]
    if clause.verb.particle:
        group_words.append(clause.verb.particle)
    verb = VerbGroup(
        words=tuple(group_words),
        span=None,  # re-inflected form no longer mirrors sentence words
        head=head,
        modal=clause.verb.modal,
        auxiliaries=(),
        particle=clause.verb.particle,
        voice=Voice.ACTIVE,
        spatial_fork=False,
    )
    trailing = tuple(p for i, p in enumerate(clause.trailing) if i != agent_idx)
    return replace(
        clause,
        subject=subject,
        verb=verb,
        obj=clause.subject,
        object_is_recipient=False,
        trailing=trailing,
    )
