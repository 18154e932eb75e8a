"""Synthetic survey generator.

Real survey answers are unavailable, so training data comes from a documented
oracle: each record's latent affinity is a bilinear form between the course's
24 keyword bits and a preference vector projected from the 6 encoded profile
components (projection drawn once from a fixed internal seed), plus Gaussian
noise. Affinity quantiles over the generated batch map to ranks 1 (best) .. 5.
"""
from __future__ import annotations

import numpy as np

from .encoders import encode_course_keywords_and_profile, encode_keywords, encode_profile
from .model import Discipline, Experience, SurveyRecord, Tables

PROJECTION_SEED = 20071  # fixed: the oracle itself, independent of the sampling seed
NOISE_SCALE = 0.08  # stddev of rank noise relative to affinity spread


def _projection() -> np.ndarray:
    rng = np.random.default_rng(PROJECTION_SEED)
    return rng.normal(0.0, 1.0, size=(6, 24))


def affinity(record: SurveyRecord, tables: Tables) -> float:
    """Noise-free latent affinity of a (profile, course) pair."""
    profile_vec = np.array(encode_profile(record.profile(), tables))
    bits = np.array(encode_keywords(record.course_keywords))
    return float(profile_vec @ _projection() @ bits)


def _discipline_pool(tables: Tables, discipline: Discipline) -> list[int]:
    return [
        e.id
        for e in tables.vocabulary.entries()
        if e.discipline in (discipline, Discipline.BOTH)
    ]


def generate_survey(
    n_records: int, seed: int, tables: Tables
) -> list[SurveyRecord]:
    """Sample profiles and course keyword sets, rank by noisy affinity quantile."""
    rng = np.random.default_rng(seed)
    drafts = []
    for _ in range(n_records):
        discipline = Discipline.ELECTRICAL if rng.random() < 0.5 else Discipline.MECHANICAL
        pool = _discipline_pool(tables, discipline)
        professional = tuple(
            sorted(int(i) for i in rng.choice(pool, size=int(rng.integers(1, 6)), replace=False))
        )
        personal = tuple(
            sorted(
                int(i)
                for i in rng.choice(
                    np.arange(1, len(tables.personal_interests) + 1), size=3, replace=False
                )
            )
        )
        n_goals = len(tables.goals)
        keywords = tuple(
            sorted(int(i) for i in rng.choice(pool, size=int(rng.integers(1, 4)), replace=False))
        )
        drafts.append(
            dict(
                discipline=discipline,
                professional_interests=professional,
                personal_interests=personal,
                experience=Experience(int(rng.integers(1, 5))),
                short_goal=int(rng.integers(1, n_goals + 1)),
                long_goal=int(rng.integers(1, n_goals + 1)),
                course_keywords=keywords,
            )
        )
    records = [SurveyRecord(rank=3, **d) for d in drafts]
    scores = np.array([affinity(r, tables) for r in records])
    noisy = scores + rng.normal(0.0, NOISE_SCALE * scores.std(), size=len(records))
    # highest affinity -> rank 1; quantile thresholds over this batch
    edges = np.quantile(noisy, [0.2, 0.4, 0.6, 0.8])
    ranks = 5 - np.searchsorted(edges, noisy, side="right")
    return [SurveyRecord(rank=int(rank), **d) for d, rank in zip(drafts, ranks)]
