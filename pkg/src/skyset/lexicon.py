"""Cue lexicon and glossary: the word lists that drive translation and linting.

Both live in the same line-oriented file format: `[section]` headers, one
phrase per line, `#` comments, and `hypernym: member, member` lines inside
`[glossary]`. Phrases are matched case-insensitively, longest first.
"""

from __future__ import annotations

import enum
import importlib.resources
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

ENV_LEXICON = "SKYSET_LEXICON"

LEXICON_SECTIONS = (
    "condition_markers",
    "process_markers",
    "recipient_markers",
    "instrument_markers",
    "articles",
    "passive_auxiliaries",
    "modal_auxiliaries",
    "discourse_refinement_markers",
)
GLOSSARY_SECTION = "glossary"


class LexiconError(ValueError):
    """Raised for malformed lexicon or glossary files; carries file and line."""

    def __init__(self, message: str, path: str | os.PathLike | None = None,
                 line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(where + message)
        self.path = str(path) if path is not None else None
        self.line = line


class MarkerKind(enum.Enum):
    CONDITION = "condition"
    PROCESS = "process"
    RECIPIENT = "recipient"
    INSTRUMENT = "instrument"


_SECTION_FOR_KIND = {
    MarkerKind.CONDITION: "condition_markers",
    MarkerKind.PROCESS: "process_markers",
    MarkerKind.RECIPIENT: "recipient_markers",
    MarkerKind.INSTRUMENT: "instrument_markers",
}


@dataclass(frozen=True)
class MarkerMatch:
    kind: MarkerKind
    phrase: str
    length: int  # number of words consumed


def _norm_phrase(raw: str) -> str:
    return " ".join(raw.casefold().split())


@dataclass(frozen=True)
class CueLexicon:
    condition_markers: tuple[str, ...]
    process_markers: tuple[str, ...]
    recipient_markers: tuple[str, ...]
    instrument_markers: tuple[str, ...]
    articles: tuple[str, ...]
    passive_auxiliaries: tuple[str, ...]
    modal_auxiliaries: tuple[str, ...]
    discourse_refinement_markers: tuple[str, ...]

    def section(self, name: str) -> tuple[str, ...]:
        if name not in LEXICON_SECTIONS:
            raise KeyError(name)
        return getattr(self, name)

    def _marker_table(self) -> list[tuple[tuple[str, ...], MarkerKind]]:
        # Longest phrases first so "in order to" wins over "in the" and "to".
        # Condition before process before recipient before instrument on ties.
        table: list[tuple[tuple[str, ...], MarkerKind]] = []
        for kind in (MarkerKind.CONDITION, MarkerKind.PROCESS,
                     MarkerKind.RECIPIENT, MarkerKind.INSTRUMENT):
            for phrase in self.section(_SECTION_FOR_KIND[kind]):
                table.append((tuple(phrase.split()), kind))
        table.sort(key=lambda item: -len(item[0]))
        return table

    def match_marker(self, words: Sequence[str], i: int) -> MarkerMatch | None:
        """Longest marker phrase starting at word i, or None."""
        lowered = [w.casefold() for w in words[i:i + _MAX_PHRASE_WORDS]]
        for phrase_words, kind in self._markers_cached():
            n = len(phrase_words)
            if tuple(lowered[:n]) == phrase_words:
                return MarkerMatch(kind, " ".join(phrase_words), n)
        return None

    def match_refinement(self, words: Sequence[str], i: int) -> int:
        """Words consumed by a refinement marker at position i (0 if none)."""
        lowered = [w.casefold().rstrip(",") for w in words[i:i + _MAX_PHRASE_WORDS]]
        best = 0
        for phrase in self.discourse_refinement_markers:
            pw = phrase.split()
            if tuple(lowered[:len(pw)]) == tuple(pw):
                best = max(best, len(pw))
        return best

    def is_article(self, word: str) -> bool:
        return word.casefold() in self.articles

    def is_passive_auxiliary(self, word: str) -> bool:
        return word.casefold() in self.passive_auxiliaries

    def is_modal(self, word: str) -> bool:
        return word.casefold() in self.modal_auxiliaries

    def _markers_cached(self) -> list[tuple[tuple[str, ...], MarkerKind]]:
        cached = _MARKER_CACHE.get(id(self))
        if cached is None:
            cached = self._marker_table()
            _MARKER_CACHE[id(self)] = cached
        return cached


_MARKER_CACHE: dict[int, list[tuple[tuple[str, ...], MarkerKind]]] = {}
_MAX_PHRASE_WORDS = 6


@dataclass(frozen=True)
class Glossary:
    """Hypernym -> member terms, for vagueness linting and suggestions."""

    entries: dict[str, tuple[str, ...]]

    def lookup(self, term: str) -> tuple[str, ...] | None:
        return self.entries.get(_norm_phrase(term))

    def __len__(self) -> int:
        return len(self.entries)


def _parse_sections(path: str | os.PathLike) -> dict[str, list[tuple[int, str]]]:
    """Raw parse: section name -> [(line number, stripped line), ...]."""
    sections: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().casefold()
            if name not in LEXICON_SECTIONS and name != GLOSSARY_SECTION:
                raise LexiconError(f"unknown section [{name}]", path, lineno)
            if name in sections:
                raise LexiconError(f"duplicate section [{name}]", path, lineno)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise LexiconError(f"entry before any section: {line!r}", path, lineno)
        sections[current].append((lineno, line))
    return sections


def load_lexicon(path: str | os.PathLike) -> CueLexicon:
    """Load a cue lexicon; every marker section must be present."""
    sections = _parse_sections(path)
    for required in LEXICON_SECTIONS:
        if required not in sections:
            raise LexiconError(f"missing required section [{required}]", path)
    fields: dict[str, tuple[str, ...]] = {}
    for name in LEXICON_SECTIONS:
        phrases: list[str] = []
        seen: set[str] = set()
        for lineno, line in sections[name]:
            if ":" in line:
                raise LexiconError(
                    f"unexpected ':' outside [glossary]: {line!r}", path, lineno)
            phrase = _norm_phrase(line)
            if phrase in seen:
                raise LexiconError(
                    f"duplicate phrase {phrase!r} in [{name}]", path, lineno)
            seen.add(phrase)
            phrases.append(phrase)
        fields[name] = tuple(phrases)
    return CueLexicon(**fields)


def _parse_glossary_lines(
    lines: Iterable[tuple[int, str]], path: str | os.PathLike
) -> dict[str, tuple[str, ...]]:
    entries: dict[str, tuple[str, ...]] = {}
    for lineno, line in lines:
        if ":" not in line:
            raise LexiconError(
                f"glossary line needs 'term: member, ...': {line!r}", path, lineno)
        term_raw, members_raw = line.split(":", 1)
        term = _norm_phrase(term_raw)
        if not term:
            raise LexiconError("empty glossary term", path, lineno)
        members = tuple(
            _norm_phrase(m) for m in members_raw.split(",") if m.strip()
        )
        if len(members) < 2:
            raise LexiconError(
                f"glossary term {term!r} needs at least two members", path, lineno)
        if len(set(members)) != len(members):
            raise LexiconError(
                f"glossary term {term!r} lists a member twice", path, lineno)
        if term in entries:
            raise LexiconError(f"duplicate glossary term {term!r}", path, lineno)
        entries[term] = members
    return entries


def load_glossary(path: str | os.PathLike) -> Glossary:
    """Load one glossary file (a [glossary] section is required)."""
    sections = _parse_sections(path)
    if GLOSSARY_SECTION not in sections:
        raise LexiconError(f"missing required section [{GLOSSARY_SECTION}]", path)
    return Glossary(_parse_glossary_lines(sections[GLOSSARY_SECTION], path))


def merge_glossaries(*glossaries: Glossary) -> Glossary:
    """Union of entries; the same term in two glossaries is an error."""
    merged: dict[str, tuple[str, ...]] = {}
    for g in glossaries:
        for term, members in g.entries.items():
            if term in merged and merged[term] != members:
                raise LexiconError(f"glossary collision on term {term!r}")
            merged[term] = members
    return Glossary(merged)


def load_glossaries(paths: Sequence[str | os.PathLike]) -> Glossary:
    return merge_glossaries(*(load_glossary(p) for p in paths))


def save_lexicon(lexicon: CueLexicon, path: str | os.PathLike) -> None:
    lines: list[str] = []
    for name in LEXICON_SECTIONS:
        lines.append(f"[{name}]")
        lines.extend(lexicon.section(name))
        lines.append("")
    Path(path).write_text("\n".join(lines), encoding="utf-8")


def save_glossary(glossary: Glossary, path: str | os.PathLike) -> None:
    lines = [f"[{GLOSSARY_SECTION}]"]
    for term, members in glossary.entries.items():
        lines.append(f"{term}: {', '.join(members)}")
    lines.append("")
    Path(path).write_text("\n".join(lines), encoding="utf-8")


def default_lexicon_path() -> Path:
    """Bundled lexicon, unless SKYSET_LEXICON points elsewhere."""
    override = os.environ.get(ENV_LEXICON)
    if override:
        return Path(override)
    return Path(
        importlib.resources.files("skyset").joinpath("data/default_lexicon.txt")
    )


def default_lexicon() -> CueLexicon:
    return load_lexicon(default_lexicon_path())
