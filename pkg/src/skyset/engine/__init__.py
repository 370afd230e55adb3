"""Deterministic translation engine: segmentation, parsing, mapping."""

from .mapping import (
    CREATION_VERBS,
    DraftRow,
    ForkDescription,
    LIGHT_VERBS,
    map_to_row,
)
from .parse import (
    Clause,
    MEANS_NOUNS,
    NoVerbFound,
    ParseError,
    Phrase,
    PURE_PARTICLES,
    SPATIAL_PARTICLES,
    TEMPORAL_NOUNS,
    TrailingPhrase,
    VerbGroup,
    Voice,
    normalize_voice,
    parse_clause,
    tokenize,
)
from .pipeline import (
    CandidateSet,
    TranslationIssue,
    TranslationOptions,
    TranslationResult,
    refines,
    split_alternatives,
    strip_entity,
    strip_function_words,
    translate_document,
)
from .segment import segment_sentences

__all__ = [
    "CREATION_VERBS",
    "CandidateSet",
    "Clause",
    "DraftRow",
    "ForkDescription",
    "LIGHT_VERBS",
    "MEANS_NOUNS",
    "NoVerbFound",
    "ParseError",
    "Phrase",
    "PURE_PARTICLES",
    "SPATIAL_PARTICLES",
    "TEMPORAL_NOUNS",
    "TrailingPhrase",
    "TranslationIssue",
    "TranslationOptions",
    "TranslationResult",
    "VerbGroup",
    "Voice",
    "map_to_row",
    "normalize_voice",
    "parse_clause",
    "refines",
    "segment_sentences",
    "split_alternatives",
    "strip_entity",
    "strip_function_words",
    "tokenize",
    "translate_document",
]
