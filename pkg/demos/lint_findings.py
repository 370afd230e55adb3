"""Linting instructions for vagueness and missing information.

A quintuple row makes gaps visible: an empty required category is a
missing instruction, and a hypernym where a concrete term belongs is a
vague one. The linter reports both, with suggestions when a glossary
knows the concrete members.
"""

from skyset import Glossary, translate_document
from skyset.lint import DEFAULT_REQUIRED, format_findings, lint_result
from skyset.model import Category

# Kitchen glossary: the generic word and its concrete members.
glossary = Glossary({
    "utensil": ("long fork", "short fork", "spoon", "knife"),
})

vague = translate_document(
    "The server places the utensil on the napkin beside the guest when "
    "the salad arrives.", doc_id="serving")
print(format_findings(lint_result(vague, glossary=glossary)))
print()

# Requiring a Process turns a quiet row into a finding: the sentence
# never says how the distribution happens.
incomplete = translate_document(
    "The professor should distribute the assignment before class begins.",
    doc_id="course")
required = DEFAULT_REQUIRED | {Category.PROCESS}
print(format_findings(lint_result(incomplete, required=required)))
print()

# Revised wordings come back clean. The follow-up sentence refines the
# first one, so "by email" folds into the same row and satisfies the
# Process requirement.
revised = translate_document(
    "The professor should distribute the assignment to the teaching "
    "assistants before class begins. Note that distribution should be "
    "done by email.", doc_id="course")
findings = lint_result(revised, required=required, glossary=glossary)
print("revised findings:", format_findings(findings))
print("merged cell:", revised.table.rows[0].text("PROCESS/REQ/RECIPIENT"))
