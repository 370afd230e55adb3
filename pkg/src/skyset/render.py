"""Turn table rows back into sentences.

Active arrangement: topic, conjugated service verb, product/resource,
manner phrases, condition. Passive arrangement: product/resource, "is/are"
plus the participle, manner phrases, a "by" agent, condition. Either way
the output re-translates to a row equal to its source.
"""

from __future__ import annotations

from .inflect import (
    AUXILIARY_FORMS,
    base_form,
    finite_form,
    looks_plural,
    participle,
)
from .model import (
    LABEL_CONDITION,
    LABEL_PROCESS_REQ_RECIPIENT,
    LABEL_PRODUCT_RESOURCE,
    LABEL_SERVICE,
    LABEL_TOPIC_ROLE,
    SkysetRow,
    SkysetTable,
)

VOICES = ("active", "passive")


class RenderError(ValueError):
    pass


class MissingCore(RenderError):
    """The row lacks a cell the requested arrangement cannot do without."""


def _require(row: SkysetRow, label: str, voice: str) -> str:
    text = row.cells[label].text
    if text is None:
        raise MissingCore(f"{voice} rendering needs {label}")
    return text


def _conjugated_service(service: str, subject: str) -> str:
    words = service.split()
    first = words[0].casefold()
    if first in AUXILIARY_FORMS:
        return service  # row kept its passive verb group; leave it alone
    base = base_form(words[0])
    words[0] = finite_form(base, looks_plural(subject.split()[-1]))
    return " ".join(words)


def _sentence(parts: list[str | None]) -> str:
    text = " ".join(p for p in parts if p)
    return text[0].upper() + text[1:] + "."


def render_row(row: SkysetRow, *, voice: str = "active") -> str:
    if voice not in VOICES:
        raise RenderError(f"unknown voice {voice!r}; use active or passive")
    topic = _require(row, LABEL_TOPIC_ROLE, voice)
    service = _require(row, LABEL_SERVICE, voice)
    manner = row.cells[LABEL_PROCESS_REQ_RECIPIENT].text
    condition = row.cells[LABEL_CONDITION].text

    if voice == "active":
        return _sentence([
            topic,
            _conjugated_service(service, topic),
            row.cells[LABEL_PRODUCT_RESOURCE].text,
            manner,
            condition,
        ])

    target = _require(row, LABEL_PRODUCT_RESOURCE, voice)
    words = service.split()
    if words[0].casefold() in AUXILIARY_FORMS:
        raise RenderError(
            f"service {service!r} is already a passive verb group")
    verb = [participle(base_form(words[0])), *words[1:]]
    aux = "are" if looks_plural(target.split()[-1]) else "is"
    return _sentence([
        target,
        aux,
        " ".join(verb),
        manner,
        f"by {topic}",
        condition,
    ])


def render_table(table: SkysetTable, *, voice: str = "active") -> list[str]:
    """One sentence per row; rival readings are numbered within their group."""
    sizes: dict[str, int] = {}
    for row in table.rows:
        if row.candidate_group is not None:
            sizes[row.candidate_group] = sizes.get(row.candidate_group, 0) + 1
    seen: dict[str, int] = {}
    out: list[str] = []
    for row in table.rows:
        sentence = render_row(row, voice=voice)
        group = row.candidate_group
        if group is not None:
            seen[group] = seen.get(group, 0) + 1
            sentence = f"[candidate {seen[group]}/{sizes[group]}] {sentence}"
        out.append(sentence)
    return out
