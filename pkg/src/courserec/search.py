"""Inverted index over course text with tf-idf OR-semantics retrieval.

Queries come from a profile's professional interests; results are filtered
so a user never sees courses from the other discipline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import Course, Discipline, DomainError, Tables, UserProfile, Vocabulary
from .text import normalize_token, tokenize

DEFAULT_CANDIDATE_LIMIT = 50


class IndexError_(DomainError):
    pass


def index_tokens(text: str) -> list[str]:
    return [normalize_token(t) for t in tokenize(text)]


@dataclass
class InvertedIndex:
    postings: dict[str, dict[str, int]] = field(default_factory=dict)  # token -> {course_id: tf}
    doc_lengths: dict[str, int] = field(default_factory=dict)
    disciplines: dict[str, Discipline] = field(default_factory=dict)

    @property
    def n_docs(self) -> int:
        return len(self.doc_lengths)

    def index_course(self, course: Course) -> None:
        if course.course_id in self.doc_lengths:
            raise IndexError_(f"course {course.course_id} already indexed")
        tokens = index_tokens(course.title + " " + course.description)
        self.doc_lengths[course.course_id] = len(tokens)
        self.disciplines[course.course_id] = course.discipline
        for tok in tokens:
            self.postings.setdefault(tok, {})
            self.postings[tok][course.course_id] = self.postings[tok].get(course.course_id, 0) + 1

    @classmethod
    def build(cls, courses: list[Course]) -> "InvertedIndex":
        idx = cls()
        for c in courses:
            idx.index_course(c)
        return idx

    def idf(self, token: str) -> float:
        df = len(self.postings.get(token, {}))
        if df == 0:
            return 0.0
        return math.log(1.0 + self.n_docs / df)

    def search(
        self, query: "Query", limit: int = DEFAULT_CANDIDATE_LIMIT
    ) -> list[tuple[str, float]]:
        """OR over terms, sum of tf*idf, discipline-filtered, ties by course_id."""
        scores: dict[str, float] = {}
        for term in query.terms:
            idf = self.idf(term)
            for course_id, tf in self.postings.get(term, {}).items():
                scores[course_id] = scores.get(course_id, 0.0) + tf * idf
        allowed = (query.discipline_filter, Discipline.BOTH)
        hits = [
            (cid, s) for cid, s in scores.items() if self.disciplines[cid] in allowed
        ]
        hits.sort(key=lambda h: (-h[1], h[0]))
        return hits[:limit]


@dataclass(frozen=True)
class Query:
    terms: tuple[str, ...]
    discipline_filter: Discipline

    def __post_init__(self):
        if not self.terms:
            raise DomainError("query must have at least one term")


def build_query(profile: UserProfile, vocabulary: Vocabulary) -> Query:
    """Union of the normalized tokens of the profile's professional-interest terms."""
    terms: list[str] = []
    for kid in profile.professional_interests:
        for tok in index_tokens(vocabulary.get(kid).term):
            if tok not in terms:
                terms.append(tok)
    return Query(terms=tuple(terms), discipline_filter=profile.discipline)


def linear_scan_search(
    courses: list[Course], query: Query, limit: int = DEFAULT_CANDIDATE_LIMIT
) -> list[tuple[str, float]]:
    """Brute-force scorer with the identical formula; the index's oracle."""
    n_docs = len(courses)
    df: dict[str, int] = {}
    tokens_by_course = {
        c.course_id: index_tokens(c.title + " " + c.description) for c in courses
    }
    for term in query.terms:
        df[term] = sum(1 for toks in tokens_by_course.values() if term in toks)
    hits = []
    for c in courses:
        if c.discipline not in (query.discipline_filter, Discipline.BOTH):
            continue
        score = 0.0
        toks = tokens_by_course[c.course_id]
        for term in query.terms:
            tf = toks.count(term)
            if tf and df[term]:
                score += tf * math.log(1.0 + n_docs / df[term])
        if score > 0.0:
            hits.append((c.course_id, score))
    hits.sort(key=lambda h: (-h[1], h[0]))
    return hits[:limit]
