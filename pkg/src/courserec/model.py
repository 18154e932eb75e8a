"""Core domain types: controlled vocabulary, lookup tables, profiles, courses, survey records."""
from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .text import normalize_term


class DomainError(Exception):
    """Base class for domain validation failures."""


class ValidationError(DomainError):
    def __init__(self, message: str, field_name: str | None = None):
        super().__init__(message)
        self.field_name = field_name


class Discipline(str, Enum):
    ELECTRICAL = "electrical"
    MECHANICAL = "mechanical"
    BOTH = "both"


class Experience(int, Enum):
    JUNIOR = 1
    INTERMEDIATE = 2
    SENIOR = 3
    MANAGEMENT = 4


MAX_KEYWORDS = 3
MAX_KEYWORD_ID = 255


@dataclass(frozen=True)
class VocabEntry:
    id: int
    term: str
    discipline: Discipline


class Vocabulary:
    """The controlled keyword thesaurus. Read-only after load."""

    def __init__(self, entries: list[VocabEntry]):
        if not entries:
            raise ValidationError("vocabulary is empty")
        ids = [e.id for e in entries]
        if sorted(ids) != list(range(1, len(entries) + 1)):
            raise ValidationError("vocabulary ids must be unique and contiguous from 1")
        if max(ids) > MAX_KEYWORD_ID:
            raise ValidationError(f"vocabulary id {max(ids)} exceeds 8-bit range")
        self._by_id: dict[int, VocabEntry] = {}
        self._by_norm: dict[str, VocabEntry] = {}
        for e in sorted(entries, key=lambda e: e.id):
            if not e.term.strip():
                raise ValidationError(f"vocabulary id {e.id} has an empty term")
            norm = normalize_term(e.term)
            if norm in self._by_norm:
                raise ValidationError(
                    f"terms {self._by_norm[norm].term!r} and {e.term!r} collide after normalization"
                )
            self._by_id[e.id] = e
            self._by_norm[norm] = e

    def __len__(self) -> int:
        return len(self._by_id)

    def __contains__(self, keyword_id: int) -> bool:
        return keyword_id in self._by_id

    def get(self, keyword_id: int) -> VocabEntry:
        try:
            return self._by_id[keyword_id]
        except KeyError:
            raise ValidationError(f"unknown vocabulary id {keyword_id}") from None

    def match(self, normalized: str) -> VocabEntry | None:
        return self._by_norm.get(normalized)

    def entries(self) -> list[VocabEntry]:
        return [self._by_id[i] for i in sorted(self._by_id)]

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        entries = []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValidationError(f"{path}:{lineno}: expected id<TAB>term<TAB>discipline")
            entries.append(VocabEntry(int(parts[0]), parts[1], Discipline(parts[2])))
        return cls(entries)


class LookupTable:
    """Goal / personal-interest id table: `id<TAB>label` lines."""

    def __init__(self, name: str, labels: dict[int, str]):
        if not labels:
            raise ValidationError(f"{name} table is empty")
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValidationError(f"{name} table ids must be contiguous from 1")
        self.name = name
        self._labels = dict(labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, table_id: int) -> bool:
        return table_id in self._labels

    def label(self, table_id: int) -> str:
        return self._labels[table_id]

    def items(self) -> list[tuple[int, str]]:
        return sorted(self._labels.items())

    @classmethod
    def load(cls, name: str, path: str | Path) -> "LookupTable":
        labels = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            key, _, label = line.partition("\t")
            labels[int(key)] = label
        return cls(name, labels)


@dataclass(frozen=True)
class Tables:
    """The reference tables a profile's ids point into."""

    vocabulary: Vocabulary
    goals: LookupTable
    personal_interests: LookupTable


def builtin_data_path(name: str) -> Path:
    return Path(str(importlib.resources.files("courserec") / "data" / name))


def load_builtin_tables() -> Tables:
    return Tables(
        vocabulary=Vocabulary.load(builtin_data_path("vocab.tsv")),
        goals=LookupTable.load("goals", builtin_data_path("goals.tsv")),
        personal_interests=LookupTable.load(
            "personal_interests", builtin_data_path("personal_interests.tsv")
        ),
    )


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    discipline: Discipline
    professional_interests: tuple[int, ...]
    personal_interests: tuple[int, ...]
    experience: Experience
    short_goal: int
    long_goal: int

    def validate(self, tables: Tables) -> None:
        if self.discipline not in (Discipline.ELECTRICAL, Discipline.MECHANICAL):
            raise ValidationError("discipline must be electrical or mechanical", "discipline")
        if not 1 <= len(self.professional_interests) <= 5:
            raise ValidationError(
                "professional_interests must have 1..5 entries", "professional_interests"
            )
        for kid in self.professional_interests:
            if kid not in tables.vocabulary:
                raise ValidationError(
                    f"unknown vocabulary id {kid}", "professional_interests"
                )
        if len(self.personal_interests) != 3:
            raise ValidationError(
                "personal_interests must have exactly 3 entries", "personal_interests"
            )
        if len(set(self.personal_interests)) != 3:
            raise ValidationError("personal_interests must be distinct", "personal_interests")
        for pid in self.personal_interests:
            if pid not in tables.personal_interests:
                raise ValidationError(
                    f"unknown personal interest id {pid}", "personal_interests"
                )
        for name, gid in (("short_goal", self.short_goal), ("long_goal", self.long_goal)):
            if gid not in tables.goals:
                raise ValidationError(f"unknown goal id {gid}", name)


@dataclass(frozen=True)
class Course:
    course_id: str
    provider: str
    title: str
    description: str
    discipline: Discipline
    keywords: tuple[int, ...] = ()
    source_url: str | None = None

    def validate(self, vocabulary: Vocabulary) -> None:
        if not self.title.strip():
            raise ValidationError("title must be nonempty", "title")
        if len(self.keywords) > MAX_KEYWORDS:
            raise ValidationError("at most 3 keywords", "keywords")
        if len(set(self.keywords)) != len(self.keywords):
            raise ValidationError("duplicate keywords", "keywords")
        for kid in self.keywords:
            if kid not in vocabulary:
                raise ValidationError(f"unknown vocabulary id {kid}", "keywords")


@dataclass(frozen=True)
class RankedCourse:
    course_id: str
    score: float
    predicted_rank: int


@dataclass(frozen=True)
class SurveyRecord:
    """One survey answer: a profile, the course's keywords, the human rank (1 best .. 5)."""

    discipline: Discipline
    professional_interests: tuple[int, ...]
    personal_interests: tuple[int, ...]
    experience: Experience
    short_goal: int
    long_goal: int
    course_keywords: tuple[int, ...]
    rank: int

    def __post_init__(self):
        if self.rank not in (1, 2, 3, 4, 5):
            raise ValidationError(f"rank must be 1..5, got {self.rank}", "rank")

    def profile(self, user_id: str = "survey") -> UserProfile:
        return UserProfile(
            user_id=user_id,
            discipline=self.discipline,
            professional_interests=self.professional_interests,
            personal_interests=self.personal_interests,
            experience=self.experience,
            short_goal=self.short_goal,
            long_goal=self.long_goal,
        )


SURVEY_FIELDS = (
    "discipline",
    "experience",
    "short_goal",
    "long_goal",
    "personal_interests",
    "professional_interests",
    "course_keywords",
    "rank",
)


def survey_record_to_line(r: SurveyRecord) -> str:
    return "\t".join(
        [
            r.discipline.value,
            str(int(r.experience)),
            str(r.short_goal),
            str(r.long_goal),
            ",".join(map(str, r.personal_interests)),
            ",".join(map(str, r.professional_interests)),
            ",".join(map(str, r.course_keywords)),
            str(r.rank),
        ]
    )


def survey_record_from_line(line: str) -> SurveyRecord:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 8:
        raise ValidationError(f"expected 8 tab-separated fields, got {len(parts)}")

    def ids(s: str) -> tuple[int, ...]:
        return tuple(int(x) for x in s.split(",")) if s else ()

    return SurveyRecord(
        discipline=Discipline(parts[0]),
        experience=Experience(int(parts[1])),
        short_goal=int(parts[2]),
        long_goal=int(parts[3]),
        personal_interests=ids(parts[4]),
        professional_interests=ids(parts[5]),
        course_keywords=ids(parts[6]),
        rank=int(parts[7]),
    )


def load_survey_file(path: str | Path) -> list[SurveyRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(survey_record_from_line(line))
    return records
