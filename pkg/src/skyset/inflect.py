"""Small rule-based English verb inflection helpers.

Covers the verb forms that show up in instructional text: third-person
singular present, base form, and past participle. Rule-based with a short
irregular table; not a general conjugator.
"""

from __future__ import annotations

IRREGULAR_PARTICIPLES = {
    "be": "been",
    "build": "built",
    "buy": "bought",
    "choose": "chosen",
    "do": "done",
    "find": "found",
    "get": "got",
    "give": "given",
    "have": "had",
    "hold": "held",
    "keep": "kept",
    "make": "made",
    "put": "put",
    "read": "read",
    "see": "seen",
    "send": "sent",
    "take": "taken",
    "teach": "taught",
    "wear": "worn",
    "write": "written",
}

PARTICIPLE_TO_BASE = {v: k for k, v in IRREGULAR_PARTICIPLES.items()}

# Auxiliaries are left alone by base_form: stripping their final -s would
# produce garbage ("is" -> "i").
AUXILIARY_FORMS = frozenset(
    {"is", "are", "was", "were", "be", "been", "being", "am",
     "has", "have", "had", "does", "do", "did"}
)

VOWELS = "aeiou"


def third_person(base: str) -> str:
    """Base form to third-person singular present: report -> reports."""
    if base.endswith(("s", "sh", "ch", "x", "z", "o")):
        return base + "es"
    if base.endswith("y") and len(base) > 1 and base[-2] not in VOWELS:
        return base[:-1] + "ies"
    return base + "s"


def base_form(verb: str) -> str:
    """Third-person singular present to base form: reports -> report.

    Auxiliaries and words that do not look inflected come back unchanged.
    """
    w = verb.lower()
    if w in AUXILIARY_FORMS:
        return verb
    if w.endswith("ies") and len(w) > 4:
        return verb[:-3] + "y"
    if w.endswith(("sses", "shes", "ches", "xes", "zes", "oes")):
        return verb[:-2]
    if w.endswith("s") and not w.endswith("ss"):
        return verb[:-1]
    return verb


def participle(base: str) -> str:
    """Base form to past participle: fill -> filled, build -> built."""
    w = base.lower()
    if w in IRREGULAR_PARTICIPLES:
        return IRREGULAR_PARTICIPLES[w]
    if w.endswith("e"):
        return base + "d"
    if w.endswith("y") and len(w) > 1 and w[-2] not in VOWELS:
        return base[:-1] + "ied"
    return base + "ed"


def base_from_participle(word: str) -> str | None:
    """Past participle back to base form, or None if not participle-shaped.

    Regular forms are resolved by suffix shape: two consonants before "ed"
    means the "ed" was appended (filled -> fill); otherwise only the "d"
    was (distributed -> distribute). A heuristic, adequate for the cue-driven
    parse this package performs.
    """
    w = word.lower()
    if w in PARTICIPLE_TO_BASE:
        return PARTICIPLE_TO_BASE[w]
    if w.endswith("ied") and len(w) > 4:
        return word[:-3] + "y"
    if w.endswith("ed") and len(w) > 3:
        if w[-3] not in VOWELS and len(w) > 4 and w[-4] not in VOWELS:
            return word[:-2]
        return word[:-1]
    return None


def is_participle(word: str) -> bool:
    w = word.lower()
    return w in PARTICIPLE_TO_BASE or (w.endswith("ed") and len(w) > 3)


def looks_plural(noun: str) -> bool:
    """Morphological number guess for a noun: bees yes, class no."""
    w = noun.lower()
    return w.endswith("s") and not w.endswith("ss") and len(w) > 2


def finite_form(base: str, plural_subject: bool) -> str:
    """Pick the present-tense form agreeing with the subject's number."""
    return base if plural_subject else third_person(base)
