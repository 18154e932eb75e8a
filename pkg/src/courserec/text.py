"""Tokenization and term normalization shared by the keyphrase extractor and the search index."""
from __future__ import annotations

import re

TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z]+)?")


def tokenize(text: str) -> list[str]:
    """Split on whitespace and punctuation; keep alphanumeric runs."""
    return TOKEN_RE.findall(text)


def normalize_token(token: str) -> str:
    """Case-fold, drop apostrophes, strip a plural suffix.

    Plural stripping is intentionally crude but deterministic: "-es"
    comes off after sibilant endings (s, x, z, ch, sh), otherwise a
    bare "-s" comes off (never "-ss", never 3-letter tokens).
    """
    t = token.lower().replace("'", "")
    if t.endswith("es") and len(t) > 4 and (t[-3] in "sxz" or t[-4:-2] in ("ch", "sh")):
        t = t[:-2]
    elif t.endswith("s") and not t.endswith("ss") and len(t) > 3:
        t = t[:-1]
    return t


def normalize_term(term: str) -> str:
    """Normalize a (possibly multi-word) term to its canonical matching form."""
    return " ".join(normalize_token(t) for t in tokenize(term))
