"""Sentence segmentation: punctuation splitting with an abbreviation guard."""

from __future__ import annotations

# Tokens that end with a period without ending a sentence.
_ABBREVIATIONS = frozenset(
    {"dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "no", "fig",
     "vs", "etc", "al", "e.g", "i.e", "cf", "dept", "univ"}
)

_TERMINATORS = ".?!"


def _ends_sentence(token: str) -> bool:
    stripped = token.rstrip(_TERMINATORS)
    if stripped == token:
        return False
    if not token.endswith("."):
        return True  # ? and ! always terminate
    word = stripped.rstrip("\"')]").casefold()
    if word in _ABBREVIATIONS:
        return False
    if len(word) == 1 and word.isalpha():
        return False  # initials like "J."
    return True


def segment_sentences(text: str) -> list[str]:
    """Split text into sentences on terminal punctuation.

    Joining the result with single spaces reproduces the input up to
    whitespace. Trailing text without a terminator is returned as a final
    fragment so nothing is silently dropped.
    """
    sentences: list[str] = []
    current: list[str] = []
    for token in text.split():
        current.append(token)
        if _ends_sentence(token):
            sentences.append(" ".join(current))
            current = []
    if current:
        sentences.append(" ".join(current))
    return sentences
