"""Numeric encoders: keyword ids to 8-bit slots, profile attributes to normalized reals.

The network sees 30 inputs: 3 keyword slots of 8 bits each (24) plus
6 profile components (experience, two goals, three personal interests).
"""
from __future__ import annotations

from .model import (
    MAX_KEYWORD_ID,
    MAX_KEYWORDS,
    Course,
    Tables,
    UserProfile,
    ValidationError,
)

KEYWORD_BITS = 8
KEYWORD_INPUTS = MAX_KEYWORDS * KEYWORD_BITS  # 24
PROFILE_INPUTS = 6
INPUT_SIZE = KEYWORD_INPUTS + PROFILE_INPUTS  # 30


def encode_keywords(keywords: tuple[int, ...] | list[int]) -> list[float]:
    """Render up to 3 keyword ids as 8-bit binary slots, ascending id, zero-padded."""
    if len(keywords) > MAX_KEYWORDS:
        raise ValidationError(f"at most {MAX_KEYWORDS} keywords, got {len(keywords)}")
    bits: list[float] = []
    for kid in sorted(keywords):
        if not 1 <= kid <= MAX_KEYWORD_ID:
            raise ValidationError(f"keyword id {kid} outside 8-bit range 1..{MAX_KEYWORD_ID}")
        bits.extend(float(b) for b in format(kid, "08b"))
    bits.extend([0.0] * (KEYWORD_INPUTS - len(bits)))
    return bits


def encode_profile(profile: UserProfile, tables: Tables) -> list[float]:
    """Six reals in (0,1]: experience, short/long goal, three ascending personal interests."""
    profile.validate(tables)
    n_goals = len(tables.goals)
    n_pi = len(tables.personal_interests)
    pis = sorted(profile.personal_interests)
    return [
        int(profile.experience) / 4.0,
        profile.short_goal / n_goals,
        profile.long_goal / n_goals,
        pis[0] / n_pi,
        pis[1] / n_pi,
        pis[2] / n_pi,
    ]


def encode_course_keywords_and_profile(
    keywords: tuple[int, ...] | list[int], profile: UserProfile, tables: Tables
) -> list[float]:
    return encode_keywords(keywords) + encode_profile(profile, tables)


def input_vector(profile: UserProfile, course: Course, tables: Tables) -> list[float]:
    """The 30-element network input for a (profile, course) pair."""
    vec = encode_course_keywords_and_profile(course.keywords, profile, tables)
    assert len(vec) == INPUT_SIZE
    return vec
