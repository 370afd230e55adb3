"""skyset: translate instructional text into quintuple tables.

The toolkit turns free-form instructions into rows of a five-column table
(topic/role, service, product/resource, process/requirement/recipient,
condition), flags ambiguous or underspecified sentences, stores and queries
the resulting tables, renders rows back into sentences, and analyzes
comprehension-timing experiments over such tables.
"""

from .engine import (
    CandidateSet,
    ParseError,
    TranslationIssue,
    TranslationOptions,
    TranslationResult,
    translate_document,
)
from .lexicon import (
    CueLexicon,
    Glossary,
    LexiconError,
    default_lexicon,
    load_glossaries,
    load_glossary,
    load_lexicon,
    merge_glossaries,
)
from .model import (
    Category,
    Column,
    ColumnSchema,
    Entity,
    Provenance,
    QUINTUPLE_LABELS,
    RowStatus,
    SkysetRow,
    SkysetTable,
    SourceDocument,
    make_quintuple_schema,
    rows_equal,
    validate_table,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "Category",
    "Column",
    "ColumnSchema",
    "CueLexicon",
    "Entity",
    "Glossary",
    "LexiconError",
    "ParseError",
    "Provenance",
    "QUINTUPLE_LABELS",
    "RowStatus",
    "SkysetRow",
    "SkysetTable",
    "SourceDocument",
    "TranslationIssue",
    "TranslationOptions",
    "TranslationResult",
    "__version__",
    "default_lexicon",
    "load_glossaries",
    "load_glossary",
    "load_lexicon",
    "make_quintuple_schema",
    "merge_glossaries",
    "rows_equal",
    "translate_document",
    "validate_table",
]
