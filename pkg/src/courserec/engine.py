"""Glue between storage, search, extraction and ranking: the recommendation
pipeline (query -> search -> rank) and batch course ingestion."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from . import keyphrase, mlp, search, wrapper
from .model import Course, DomainError, RankedCourse, UserProfile
from .store import Store

MIN_DISPLAY = 5
MAX_DISPLAY = 15
DEFAULT_DISPLAY = 10


class NoModelError(DomainError):
    pass


@dataclass(frozen=True)
class IngestionReport:
    added: int
    updated: int
    skipped: int


@dataclass(frozen=True)
class Recommendation:
    user_id: str
    items: list[RankedCourse]
    store_revision: int
    model_revision: int


def clamp_limit(limit: int) -> int:
    return min(MAX_DISPLAY, max(MIN_DISPLAY, limit))


class Engine:
    """Serves recommendations against revision-tagged views; one writer."""

    def __init__(self, store: Store, model: mlp.MlpModel | None = None):
        self.store = store
        self.tables = store.tables
        self._lock = threading.Lock()
        self._index: search.InvertedIndex | None = None
        self._index_revision = -1
        self._model = model
        self._model_revision = 1 if model is not None else 0

    # -- model management ----------------------------------------------------

    @property
    def model(self) -> mlp.MlpModel | None:
        return self._model

    @property
    def model_revision(self) -> int:
        return self._model_revision

    def set_model(self, model: mlp.MlpModel) -> int:
        with self._lock:
            self._model = model
            self._model_revision += 1
            return self._model_revision

    def load_model(self, path: str | Path) -> int:
        return self.set_model(mlp.MlpModel.load(path))

    def train_model(self, cfg: mlp.TrainConfig) -> tuple[int, mlp.EvalReport]:
        records = self.store.list_survey()
        if not records:
            raise DomainError("no survey records in store to train on")
        model = mlp.train(records, cfg, self.tables)
        report = mlp.evaluate(model, records, self.tables)
        return self.set_model(model), report

    # -- search index --------------------------------------------------------

    def index(self) -> search.InvertedIndex:
        """Rebuild lazily whenever the store revision has moved."""
        with self._lock:
            rev = self.store.revision
            if self._index is None or self._index_revision != rev:
                self._index = search.InvertedIndex.build(self.store.list_courses())
                self._index_revision = rev
            return self._index

    # -- recommendation pipeline ---------------------------------------------

    def recommend(self, user_id: str, limit: int = DEFAULT_DISPLAY) -> Recommendation:
        profile = self.store.get_user(user_id)
        if self._model is None:
            raise NoModelError(
                "no trained ranking model loaded; train one first (cli: train / admin: POST /api/admin/train)"
            )
        limit = clamp_limit(limit)
        query = search.build_query(profile, self.tables.vocabulary)
        hits = self.index().search(query, limit=search.DEFAULT_CANDIDATE_LIMIT)
        ranked = [
            mlp.predict_rank(self._model, profile, self.store.get_course(cid), self.tables)
            for cid, _ in hits
        ]
        ranked.sort(key=lambda r: (-r.score, r.course_id))
        return Recommendation(
            user_id=user_id,
            items=ranked[:limit],
            store_revision=self.store.revision,
            model_revision=self._model_revision,
        )

    # -- ingestion -----------------------------------------------------------

    def corpus_stats_for(self, extra_documents: list[str]) -> keyphrase.CorpusStats:
        docs = [c.description for c in self.store.list_courses()] + extra_documents
        return keyphrase.build_corpus_stats(docs, self.tables.vocabulary)

    def integrate(
        self,
        records: list[wrapper.ExtractedRecord],
        nb_model: keyphrase.NbModel | None = None,
    ) -> IngestionReport:
        """Upsert extracted records keyed on (provider, title); keywords are
        recomputed only for new or changed descriptions. Atomic per batch."""
        if nb_model is None:
            nb_model = keyphrase.default_nb_model(self.tables.vocabulary)
        added = updated = skipped = 0
        # df/N over current store plus the incoming batch, so batch terms are never df=0
        stats = self.corpus_stats_for([r.description for r in records])

        def run(store: Store) -> None:
            nonlocal added, updated, skipped
            for rec in records:
                if not rec.title.strip():
                    skipped += 1
                    continue
                existing = store.find_course_by_key(rec.provider, rec.title)
                if existing is not None and existing.description == rec.description:
                    skipped += 1
                    continue
                keywords = tuple(
                    keyphrase.extract_keywords(
                        rec.description or rec.title,
                        self.tables.vocabulary,
                        stats,
                        nb_model,
                    )
                )
                discipline = keyphrase.classify_course(keywords, self.tables.vocabulary)
                course = Course(
                    course_id=existing.course_id if existing else "",
                    provider=rec.provider,
                    title=rec.title,
                    description=rec.description,
                    discipline=discipline,
                    keywords=keywords,
                    source_url=rec.source_url,
                )
                store.upsert_course(course)
                if existing is None:
                    added += 1
                else:
                    updated += 1

        self.store.batch(run)
        return IngestionReport(added=added, updated=updated, skipped=skipped)

    def ingest_corpus(
        self, corpus_dir: str | Path, nb_model: keyphrase.NbModel | None = None
    ) -> IngestionReport:
        return self.integrate(wrapper.extract_corpus(corpus_dir), nb_model)
