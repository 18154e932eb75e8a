"""Course recommendation engine: controlled-vocabulary keyphrase extraction,
an MLP ranker, inverted-index search, wrapper-based ingestion, JSONL
persistence, an HTTP service, and a CLI."""

from .engine import Engine, IngestionReport, Recommendation
from .model import (
    Course,
    Discipline,
    DomainError,
    Experience,
    SurveyRecord,
    Tables,
    UserProfile,
    ValidationError,
    Vocabulary,
    load_builtin_tables,
)
from .store import Store

__all__ = [
    "Course",
    "Discipline",
    "DomainError",
    "Engine",
    "Experience",
    "IngestionReport",
    "Recommendation",
    "Store",
    "SurveyRecord",
    "Tables",
    "UserProfile",
    "ValidationError",
    "Vocabulary",
    "load_builtin_tables",
]

__version__ = "0.1.0"
