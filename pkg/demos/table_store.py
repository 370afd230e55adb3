"""
Tables from different documents share one shape
===============================================

The five columns fit instructions from any subject area, so tables
translated from unrelated documents concatenate into one store that can
be filtered, searched, sorted, and saved.
"""

import tempfile
from pathlib import Path

from skyset import translate_document
from skyset.store import (
    concat_tables,
    filter_rows,
    load_table,
    parse_filter,
    save_table,
    search_table,
    sort_rows,
)

charter = translate_document(
    "The philosophy debate team member wears the debate team uniform per "
    "the debate team charter when participating in the debate competition.",
    doc_id="debate_charter", title="Debate Team Charter")
syllabus = translate_document(
    "The baking student chooses two baking projects according to the "
    "course syllabus by the third week of class.",
    doc_id="baking_syllabus", title="Baking Class Syllabus")
catalog = translate_document(
    "The music major takes the introductory music class to satisfy the "
    "music department requirement before graduation.",
    doc_id="music_requirements", title="Graduation Requirements")

combined = concat_tables([charter.table, syllabus.table, catalog.table])
print(f"{len(combined.rows)} rows from {len(combined.sources)} documents")

# A student on the debate team and headed for a music major skips the
# baking row. Filters use a tiny grammar: column, operator, value.
schema = combined.schema
for expression in ("TOPIC/ROLE contains debate",
                   "TOPIC/ROLE contains music major"):
    matched = filter_rows(combined, [parse_filter(expression, schema)])
    for row in matched.rows:
        print(f"  applies ({expression}): {row.text('SERVICE')} "
              f"{row.text('PRODUCT/RESOURCE')}")

# Search scans every cell; sort orders by one column, nulls last.
for hit in search_table(combined, "syllabus"):
    print("  hit:", hit.row_index, hit.column, hit.text)
by_role = sort_rows(combined, "TOPIC/ROLE")
print("sorted roles:", [r.text("TOPIC/ROLE") for r in by_role.rows])

# Round trip through the canonical tab-separated format.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "combined.tsv"
    save_table(combined, path)
    again = load_table(path, schema=schema)
    print("round trip equal:", again.signature() == combined.signature())
