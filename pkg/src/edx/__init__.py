"""Event-detection corpus explorer.

Ingest span-annotated event-detection datasets into one corpus model,
build inverted trigger indices, compute dataset-quality reports, train a
lexicon annotator, and serve everything over a JSON API and CLI.
"""

from edx.errors import EdxError, FormatMismatch, InvalidArgument, NotFound
from edx.model import (
    NEGATIVE_LABEL,
    NEGATIVE_TYPE,
    Corpus,
    Document,
    EventType,
    Mention,
    Sentence,
    Violation,
    normalize_trigger,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "EdxError",
    "FormatMismatch",
    "InvalidArgument",
    "NotFound",
    "NEGATIVE_LABEL",
    "NEGATIVE_TYPE",
    "Corpus",
    "Document",
    "EventType",
    "Mention",
    "Sentence",
    "Violation",
    "normalize_trigger",
    "validate",
    "__version__",
]
