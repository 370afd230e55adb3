"""
Translating instructional text into a quintuple table
=====================================================

The translator reads ordinary instructional sentences and fills the five
SKYSET columns. Nothing is learned from data; a cue lexicon drives every
decision, so the same input always yields the same table.
"""

from skyset import TranslationOptions, translate_document

TEXT = ("A scout bee reports the location of food to other scout bees "
        "via the Waggle Dance upon return to the colony.")

result = translate_document(TEXT, doc_id="bees", title="Scout bee dance")

# One sentence, one row. Cells are plain text, empty cells are None.
table = result.table
print("columns:", " | ".join(table.schema.labels))
for row in table.rows:
    print("row:    ", " | ".join(str(row.text(l)) for l in table.schema.labels))

# Each cell remembers which categories it carries. The fourth column is
# shared by Process, Requirement, and Recipient, so a single cell can
# hold more than one.
row = table.rows[0]
for label in table.schema.labels:
    cell = row.cells[label]
    if cell.text is not None:
        names = ", ".join(sorted(c.title for c in cell.categories))
        print(f"{label:<22} {names:<20} {cell.text}")

# Function-word stripping is an option, not a law. Keep the articles:
kept = translate_document(
    TEXT, doc_id="bees",
    options=TranslationOptions(strip_articles=False))
print()
print("with articles:", kept.table.rows[0].text("PRODUCT/RESOURCE"))

# Provenance ties every row back to the sentence that produced it.
print("came from sentence", row.provenance.sentences[0], "of", repr(
    table.sources["bees"].sentences[0][:40] + "..."))
