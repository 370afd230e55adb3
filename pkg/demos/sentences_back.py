"""Rows render back to sentences, in either voice.

Translation is reversible: a finished row carries enough structure to
write a plain sentence from it, and translating that sentence returns
the same row. The three phrasings below also show the forward direction
collapsing surface variation into one canonical row.
"""

from skyset import rows_equal, translate_document
from skyset.render import render_row, render_table

result = translate_document(
    "The student fills the test tube with water when instructed. "
    "The test tube is filled with water by the student when instructed. "
    "When instructed, the test tube is filled with water by the student.",
    doc_id="lab")

rows = result.table.rows
print("three sentences, one row, stated three ways:")
# The fronted phrasing keeps its capital W; comparison is case-blind.
for line in render_table(result.table):
    print(" ", line)
print("pairwise equal:", rows_equal(rows[0], rows[1])
      and rows_equal(rows[1], rows[2]))

# Voice is a rendering choice, not a property of the row.
row = rows[0]
active = render_row(row, voice="active")
passive = render_row(row, voice="passive")
print("active: ", active)
print("passive:", passive)

# Round trip: both renderings translate back to the row we started from.
for sentence in (active, passive):
    back = translate_document(sentence, doc_id="rt")
    print(f"back from {sentence!r}:",
          rows_equal(row, back.table.rows[0]))
