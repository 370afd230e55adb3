"""Ambiguous sentences fork into rival rows instead of guessing.

Two classic attachments trip human readers and parsers alike: an
instrument phrase that could modify either participant, and a particle
that may or may not belong to the verb. The translator emits one row per
reading, tagged with a shared candidate group, and leaves the choice to
someone who knows the domain.
"""

from skyset import translate_document
from skyset.store import resolve_candidate

result = translate_document(
    "The instructor listens to the medical student with the stethoscope "
    "during class.", doc_id="clinic")

for cand in result.candidates:
    print(f"group {cand.group}: {cand.size} readings")
    print(" ", cand.description)

table = result.table
for i, row in enumerate(table.rows):
    cells = [str(row.text(l)) for l in table.schema.labels]
    print(f"  case {i + 1}:", " | ".join(cells))

# Settle the group by index. Resolution keeps the chosen row in the
# table, drops its rivals, and marks the survivor final.
winner = resolve_candidate(table, "clinic:s0", 0)
print("kept:", winner.text("PRODUCT/RESOURCE"), "/", winner.status.value,
      "/ rows left:", len(table.rows))

# Same mechanics for the particle fork.
painter = translate_document("The painter looks over the wall.", doc_id="p")
for i, row in enumerate(painter.table.rows):
    print(f"reading {i + 1}: service={row.text('SERVICE')!r} "
          f"process={row.text('PROCESS/REQ/RECIPIENT')!r}")
