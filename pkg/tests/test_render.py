import pytest

from skyset import translate_document
from skyset.model import LABEL_PRODUCT_RESOURCE, LABEL_TOPIC_ROLE, rows_equal
from skyset.render import MissingCore, RenderError, render_row, render_table

from golden_corpus import EXAMPLES


def row_for(number):
    return translate_document(EXAMPLES[number], doc_id=f"ex{number}") \
        .table.rows[0]


def test_active_rendering_conjugates_for_singular_subject():
    sentence = render_row(row_for(1))
    assert sentence == ("Scout bee reports location of food to other scout "
                        "bees via Waggle Dance upon return to colony.")


def test_active_rendering_conjugates_for_plural_subject():
    row = translate_document(
        "The school library is built by the construction workers during "
        "the summer.").table.rows[0]
    sentence = render_row(row)
    assert sentence.startswith("Construction workers build school library")


def test_passive_rendering_moves_target_first():
    sentence = render_row(row_for(5), voice="passive")
    assert sentence == ("Assignment is distributed by professor before "
                        "class begins.")


def test_passive_auxiliary_agrees_with_plural_target():
    row = translate_document(
        "The manager approves the travel requests upon submission.") \
        .table.rows[0]
    sentence = render_row(row, voice="passive")
    assert sentence.startswith("Travel requests are approved by manager")


def test_passive_keeps_particle_after_participle():
    row = translate_document(
        "In accordance with the course syllabus, the student should fill "
        "out a critique assessment form.").table.rows[0]
    sentence = render_row(row, voice="passive")
    assert "is filled out" in sentence
    assert sentence.endswith("by student.")


def test_unknown_voice_rejected():
    with pytest.raises(RenderError, match="unknown voice"):
        render_row(row_for(1), voice="middle")


def test_active_requires_topic_and_service():
    row = row_for(5)
    row.cells[LABEL_TOPIC_ROLE] = row.cells[LABEL_TOPIC_ROLE].__class__(
        None, row.cells[LABEL_TOPIC_ROLE].categories)
    with pytest.raises(MissingCore, match="TOPIC/ROLE"):
        render_row(row)


def test_passive_requires_a_target():
    row = translate_document(
        "The instructor listens to the medical student during class.") \
        .table.rows[0]
    assert row.cells[LABEL_PRODUCT_RESOURCE].text is None
    with pytest.raises(MissingCore, match="PRODUCT/RESOURCE"):
        render_row(row, voice="passive")


def test_unnormalized_passive_service_renders_as_is():
    from skyset.engine.pipeline import TranslationOptions
    row = translate_document(
        "The assignment should be distributed by email.",
        options=TranslationOptions(normalize_passive=False)).table.rows[0]
    # the verb group is kept untouched, modal dropped as usual
    assert render_row(row) == "Assignment be distributed by email."
    with pytest.raises(MissingCore):
        render_row(row, voice="passive")


def test_passive_voice_rejects_passive_verb_group():
    row = row_for(5)
    service = row.cells["SERVICE"]
    row.cells["SERVICE"] = service.__class__("is distributed",
                                             service.categories)
    with pytest.raises(RenderError, match="passive verb group"):
        render_row(row, voice="passive")


def test_round_trip_either_voice():
    row = row_for(4)
    for voice in ("active", "passive"):
        back = translate_document(render_row(row, voice=voice))
        assert not back.errors
        assert len(back.table.rows) == 1
        assert rows_equal(row, back.table.rows[0])


def test_render_table_numbers_rival_readings():
    table = translate_document(EXAMPLES[2], doc_id="ex2").table
    sentences = render_table(table)
    assert sentences[0].startswith("[candidate 1/2] ")
    assert sentences[1].startswith("[candidate 2/2] ")


def test_render_table_plain_for_settled_rows():
    table = translate_document(EXAMPLES[9], doc_id="ex9").table
    sentences = render_table(table)
    assert len(sentences) == 3
    assert not any(s.startswith("[") for s in sentences)
