"""Email parsing, feature extraction, and prompt-safe sanitization."""

from .features import (
    ACTION_NAMES,
    HEADER_ANOMALY_NAMES,
    TRIGGER_NAMES,
    EmailFeatures,
    LexiconSet,
    default_lexicons,
    extract_features,
)
from .parser import AttachmentInfo, Link, ParsedEmail, ParseError, parse_email, strip_markup
from .sanitize import (
    GUARD_TEXT,
    REMOVED_LINE_MARKER,
    SanitizedEmailText,
    load_injection_patterns,
    sanitize_for_prompt,
)

__all__ = [
    "ACTION_NAMES",
    "HEADER_ANOMALY_NAMES",
    "TRIGGER_NAMES",
    "AttachmentInfo",
    "EmailFeatures",
    "GUARD_TEXT",
    "LexiconSet",
    "Link",
    "ParseError",
    "ParsedEmail",
    "REMOVED_LINE_MARKER",
    "SanitizedEmailText",
    "default_lexicons",
    "extract_features",
    "load_injection_patterns",
    "parse_email",
    "sanitize_for_prompt",
    "strip_markup",
]
