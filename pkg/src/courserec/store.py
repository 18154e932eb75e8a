"""Durable line-record storage: the single-writer gateway for every mutation.

Entities live in JSONL files under a data directory; every committed
mutation rewrites the touched file atomically (temp file + rename) and
bumps a monotonically increasing revision.
"""
from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import asdict, replace
from pathlib import Path

from .model import (
    Course,
    Discipline,
    DomainError,
    Experience,
    SurveyRecord,
    Tables,
    UserProfile,
    ValidationError,
)


class ConflictError(DomainError):
    pass


class NotFoundError(DomainError):
    pass


class SnapshotError(DomainError):
    pass


def _profile_to_obj(p: UserProfile) -> dict:
    return {
        "user_id": p.user_id,
        "discipline": p.discipline.value,
        "professional_interests": list(p.professional_interests),
        "personal_interests": list(p.personal_interests),
        "experience": int(p.experience),
        "short_goal": p.short_goal,
        "long_goal": p.long_goal,
    }


def _profile_from_obj(o: dict) -> UserProfile:
    return UserProfile(
        user_id=o["user_id"],
        discipline=Discipline(o["discipline"]),
        professional_interests=tuple(o["professional_interests"]),
        personal_interests=tuple(o["personal_interests"]),
        experience=Experience(o["experience"]),
        short_goal=o["short_goal"],
        long_goal=o["long_goal"],
    )


def _course_to_obj(c: Course) -> dict:
    o = asdict(c)
    o["discipline"] = c.discipline.value
    o["keywords"] = list(c.keywords)
    return o


def _course_from_obj(o: dict) -> Course:
    return Course(
        course_id=o["course_id"],
        provider=o["provider"],
        title=o["title"],
        description=o["description"],
        discipline=Discipline(o["discipline"]),
        keywords=tuple(o["keywords"]),
        source_url=o.get("source_url"),
    )


def _atomic_write(path: Path, content: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


class Store:
    """In-memory views of users / courses / survey records, file-backed.

    One writer lock serializes mutations; reads hand out copies tagged
    with the revision they were taken at.
    """

    ENTITY_FILES = ("users.jsonl", "courses.jsonl", "survey.jsonl", "meta.json")

    def __init__(self, data_dir: str | Path, tables: Tables):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.tables = tables
        self._lock = threading.RLock()
        self._users: dict[str, UserProfile] = {}
        self._courses: dict[str, Course] = {}
        self._survey: list[SurveyRecord] = []
        self._revision = 0
        self._load()

    # -- loading / committing ------------------------------------------------

    def _path(self, name: str) -> Path:
        return self.data_dir / name

    def _load(self) -> None:
        from .model import survey_record_from_line

        if self._path("meta.json").exists():
            self._revision = json.loads(self._path("meta.json").read_text())["revision"]
        if self._path("users.jsonl").exists():
            for line in self._path("users.jsonl").read_text(encoding="utf-8").splitlines():
                if line.strip():
                    p = _profile_from_obj(json.loads(line))
                    self._users[p.user_id] = p
        if self._path("courses.jsonl").exists():
            for line in self._path("courses.jsonl").read_text(encoding="utf-8").splitlines():
                if line.strip():
                    c = _course_from_obj(json.loads(line))
                    self._courses[c.course_id] = c
        if self._path("survey.jsonl").exists():
            for line in self._path("survey.jsonl").read_text(encoding="utf-8").splitlines():
                if line.strip():
                    self._survey.append(survey_record_from_line(json.loads(line)["line"]))

    def _commit(self) -> None:
        from .model import survey_record_to_line

        self._revision += 1
        _atomic_write(
            self._path("users.jsonl"),
            "".join(
                json.dumps(_profile_to_obj(p), sort_keys=True) + "\n"
                for _, p in sorted(self._users.items())
            ),
        )
        _atomic_write(
            self._path("courses.jsonl"),
            "".join(
                json.dumps(_course_to_obj(c), sort_keys=True) + "\n"
                for _, c in sorted(self._courses.items())
            ),
        )
        _atomic_write(
            self._path("survey.jsonl"),
            "".join(
                json.dumps({"line": survey_record_to_line(r)}) + "\n" for r in self._survey
            ),
        )
        _atomic_write(self._path("meta.json"), json.dumps({"revision": self._revision}) + "\n")

    # -- reads ---------------------------------------------------------------

    @property
    def revision(self) -> int:
        with self._lock:
            return self._revision

    def get_user(self, user_id: str) -> UserProfile:
        with self._lock:
            if user_id not in self._users:
                raise NotFoundError(f"unknown user {user_id}")
            return self._users[user_id]

    def list_users(self) -> list[UserProfile]:
        with self._lock:
            return [p for _, p in sorted(self._users.items())]

    def get_course(self, course_id: str) -> Course:
        with self._lock:
            if course_id not in self._courses:
                raise NotFoundError(f"unknown course {course_id}")
            return self._courses[course_id]

    def list_courses(self) -> list[Course]:
        with self._lock:
            return [c for _, c in sorted(self._courses.items())]

    def find_course_by_key(self, provider: str, title: str) -> Course | None:
        with self._lock:
            for c in self._courses.values():
                if c.provider == provider and c.title == title:
                    return c
            return None

    def list_survey(self) -> list[SurveyRecord]:
        with self._lock:
            return list(self._survey)

    # -- mutations -----------------------------------------------------------

    def upsert_user(self, profile: UserProfile) -> str:
        with self._lock:
            profile.validate(self.tables)
            user_id = profile.user_id or uuid.uuid4().hex
            if not profile.user_id:
                profile = replace(profile, user_id=user_id)
            self._users[user_id] = profile
            self._commit()
            return user_id

    def upsert_course(self, course: Course, allow_update: bool = True) -> Course:
        with self._lock:
            course.validate(self.tables.vocabulary)
            existing = self.find_course_by_key(course.provider, course.title)
            if existing is not None and existing.course_id != course.course_id:
                if not allow_update:
                    raise ConflictError(
                        f"course ({course.provider!r}, {course.title!r}) already exists"
                    )
                course = replace(course, course_id=existing.course_id)
            if not course.course_id:
                course = replace(course, course_id=uuid.uuid4().hex)
            self._courses[course.course_id] = course
            self._commit()
            return course

    def insert_course(self, course: Course) -> Course:
        with self._lock:
            if self.find_course_by_key(course.provider, course.title) is not None:
                raise ConflictError(
                    f"course ({course.provider!r}, {course.title!r}) already exists"
                )
            return self.upsert_course(course)

    def delete_course(self, course_id: str) -> None:
        with self._lock:
            if course_id not in self._courses:
                raise NotFoundError(f"unknown course {course_id}")
            del self._courses[course_id]
            self._commit()

    def add_survey_records(self, records: list[SurveyRecord]) -> None:
        with self._lock:
            self._survey.extend(records)
            self._commit()

    def batch(self, mutate) -> None:
        """Run `mutate(store)` under the writer lock as one committed batch."""
        with self._lock:
            before = (dict(self._users), dict(self._courses), list(self._survey))
            try:
                mutate(self)
            except Exception:
                self._users, self._courses, self._survey = before
                raise

    # -- snapshot / restore --------------------------------------------------

    def snapshot(self, path: str | Path) -> None:
        """One self-delimiting text file bundling every entity file."""
        with self._lock:
            sections = []
            for name in self.ENTITY_FILES:
                body = self._path(name).read_text(encoding="utf-8") if self._path(name).exists() else ""
                sections.append(f"@@section {name} {len(body.encode('utf-8'))}\n{body}")
            _atomic_write(Path(path), "".join(sections))

    def restore(self, path: str | Path) -> None:
        raw = Path(path).read_bytes()
        sections: dict[str, str] = {}
        pos = 0
        while pos < len(raw):
            nl = raw.find(b"\n", pos)
            header = raw[pos:nl].decode("utf-8", errors="replace")
            if nl < 0 or not header.startswith("@@section "):
                raise SnapshotError(f"corrupt snapshot {path}: bad header at byte {pos}")
            _, name, size = header.split(" ")
            start = nl + 1
            end = start + int(size)
            if end > len(raw):
                raise SnapshotError(
                    f"corrupt snapshot {path}: section {name} truncated "
                    f"(need {int(size)} bytes, have {len(raw) - start})"
                )
            sections[name] = raw[start:end].decode("utf-8")
            pos = end
        missing = [n for n in self.ENTITY_FILES if n not in sections]
        if missing:
            raise SnapshotError(f"corrupt snapshot {path}: missing sections {missing}")
        with self._lock:
            for name, body in sections.items():
                _atomic_write(self._path(name), body)
            self._users.clear()
            self._courses.clear()
            self._survey.clear()
            self._revision = 0
            self._load()

    # -- integrity -----------------------------------------------------------

    def validate_integrity(self) -> None:
        """Full-scan referential check; raises on the first violation."""
        with self._lock:
            for p in self._users.values():
                p.validate(self.tables)
            keys = set()
            for c in self._courses.values():
                c.validate(self.tables.vocabulary)
                key = (c.provider, c.title)
                if key in keys:
                    raise ValidationError(f"duplicate (provider, title) {key}")
                keys.add(key)
