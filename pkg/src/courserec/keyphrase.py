"""Thesaurus-based keyphrase extraction and course discipline classification.

Candidate n-grams (1..3 tokens) are pseudo-matched against the controlled
vocabulary, scored by TF x IDF and first-occurrence position, and filtered
through a discretized Naive Bayes model.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .model import Discipline, DomainError, Vocabulary
from .text import normalize_token, tokenize

N_BINS = 10
MAX_NGRAM = 3


class CorpusError(DomainError):
    pass


class TrainingError(DomainError):
    pass


@dataclass(frozen=True)
class CorpusStats:
    """Document frequencies over the global corpus, keyed by vocabulary id."""

    n_docs: int
    df: dict[int, int]

    def df_for(self, term_id: int) -> int:
        return self.df.get(term_id, 0)


@dataclass(frozen=True)
class CandidateFeatures:
    term_id: int
    freq: int
    doc_size: int
    first_pos: float  # first-occurrence token index / token count, in [0,1)
    tfidf: float = 0.0


def document_term_counts(document: str, vocabulary: Vocabulary) -> dict[int, tuple[int, int]]:
    """Map matched term id -> (occurrence count, first token index)."""
    tokens = [normalize_token(t) for t in tokenize(document)]
    found: dict[int, tuple[int, int]] = {}
    for n in range(1, MAX_NGRAM + 1):
        for i in range(len(tokens) - n + 1):
            entry = vocabulary.match(" ".join(tokens[i : i + n]))
            if entry is None:
                continue
            if entry.id in found:
                count, first = found[entry.id]
                found[entry.id] = (count + 1, first)
            else:
                found[entry.id] = (1, i)
    return found


def identify_candidates(
    document: str, vocabulary: Vocabulary, stats: CorpusStats | None = None
) -> list[CandidateFeatures]:
    """All vocabulary terms pseudo-matched in the document, with features.

    TF x IDF is filled in only when corpus stats are supplied.
    """
    n_tokens = len(tokenize(document))
    if n_tokens == 0:
        return []
    candidates = []
    for term_id, (count, first) in sorted(document_term_counts(document, vocabulary).items()):
        c = CandidateFeatures(
            term_id=term_id, freq=count, doc_size=n_tokens, first_pos=first / n_tokens
        )
        if stats is not None:
            df = stats.df_for(term_id)
            if df == 0:
                # term unseen in the global corpus: count this document itself
                c = replace(c, tfidf=tfidf(count, n_tokens, 1, stats.n_docs + 1))
            else:
                c = replace(c, tfidf=tfidf(count, n_tokens, df, stats.n_docs))
        candidates.append(c)
    return candidates


def tfidf(freq: int, doc_size: int, df: int, n_docs: int) -> float:
    """(freq/size) * -log2(df/N); 0 for absent terms."""
    if freq == 0:
        return 0.0
    if doc_size < 1 or n_docs < 1:
        raise CorpusError("doc_size and n_docs must be >= 1")
    if df == 0:
        raise CorpusError("term occurs in document but df is 0: corpus stats inconsistent")
    if df > n_docs:
        raise CorpusError(f"df {df} exceeds corpus size {n_docs}")
    return (freq / doc_size) * -math.log2(df / n_docs)


def build_corpus_stats(documents: list[str], vocabulary: Vocabulary) -> CorpusStats:
    if not documents:
        raise CorpusError("corpus must contain at least one document")
    df: dict[int, int] = {}
    for doc in documents:
        for term_id in document_term_counts(doc, vocabulary):
            df[term_id] = df.get(term_id, 0) + 1
    return CorpusStats(n_docs=len(documents), df=df)


def _equal_frequency_edges(values: list[float]) -> list[float]:
    """Interior cut points splitting sorted values into N_BINS equal-count bins."""
    v = sorted(values)
    n = len(v)
    edges = []
    for k in range(1, N_BINS):
        idx = k * n // N_BINS
        edges.append(v[min(idx, n - 1)])
    return edges


def _bin_index(edges: list[float], x: float) -> int:
    for i, e in enumerate(edges):
        if x < e:
            return i
    return len(edges)


@dataclass(frozen=True)
class NbModel:
    """Discretized two-feature Naive Bayes filter with uniform-shrinkage smoothing."""

    y_count: int
    n_count: int
    tfidf_edges: list[float]
    pos_edges: list[float]
    # per-bin likelihoods, indexed [bin]
    tfidf_yes: list[float]
    tfidf_no: list[float]
    pos_yes: list[float]
    pos_no: list[float]

    def save(self, path: str | Path) -> None:
        lines = [f"counts\t{self.y_count}\t{self.n_count}"]
        for name in ("tfidf_edges", "pos_edges", "tfidf_yes", "tfidf_no", "pos_yes", "pos_no"):
            values = getattr(self, name)
            lines.append(name + "\t" + "\t".join(repr(v) for v in values))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "NbModel":
        fields: dict = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            parts = line.split("\t")
            if parts[0] == "counts":
                fields["y_count"], fields["n_count"] = int(parts[1]), int(parts[2])
            else:
                fields[parts[0]] = [float(v) for v in parts[1:]]
        return cls(**fields)


def nb_train(labeled: list[tuple[CandidateFeatures, bool]]) -> NbModel:
    """Fit bin edges on all training features, then per-class smoothed bin likelihoods."""
    if not labeled:
        raise TrainingError("empty training set")
    y_count = sum(1 for _, pos in labeled if pos)
    n_count = len(labeled) - y_count
    if y_count == 0 or n_count == 0:
        raise TrainingError("training set needs at least one positive and one negative example")
    tfidf_edges = _equal_frequency_edges([c.tfidf for c, _ in labeled])
    pos_edges = _equal_frequency_edges([c.first_pos for c, _ in labeled])

    def likelihoods(edges, values_for_class, class_count):
        # smoothing shrinks halfway toward uniform with weight = class size,
        # so identical features across classes yield identical likelihoods
        # (posterior collapses to the prior) regardless of class balance
        counts = [0] * N_BINS
        for v in values_for_class:
            counts[_bin_index(edges, v)] += 1
        return [(c + class_count / N_BINS) / (2 * class_count) for c in counts]

    yes = [c for c, pos in labeled if pos]
    no = [c for c, pos in labeled if not pos]
    return NbModel(
        y_count=y_count,
        n_count=n_count,
        tfidf_edges=tfidf_edges,
        pos_edges=pos_edges,
        tfidf_yes=likelihoods(tfidf_edges, [c.tfidf for c in yes], y_count),
        tfidf_no=likelihoods(tfidf_edges, [c.tfidf for c in no], n_count),
        pos_yes=likelihoods(pos_edges, [c.first_pos for c in yes], y_count),
        pos_no=likelihoods(pos_edges, [c.first_pos for c in no], n_count),
    )


def nb_score(model: NbModel, c: CandidateFeatures) -> float:
    """Posterior probability that the candidate is a keyphrase, in [0,1]."""
    total = model.y_count + model.n_count
    tb = _bin_index(model.tfidf_edges, c.tfidf)
    pb = _bin_index(model.pos_edges, c.first_pos)
    p_yes = (model.y_count / total) * model.tfidf_yes[tb] * model.pos_yes[pb]
    p_no = (model.n_count / total) * model.tfidf_no[tb] * model.pos_no[pb]
    return p_yes / (p_yes + p_no)


def extract_keywords(
    document: str, vocabulary: Vocabulary, stats: CorpusStats, model: NbModel
) -> list[int]:
    """Top 3 candidates by posterior; ties broken by earlier position, then smaller id."""
    candidates = identify_candidates(document, vocabulary, stats)
    scored = [(nb_score(model, c), c) for c in candidates]
    scored.sort(key=lambda sc: (-sc[0], sc[1].first_pos, sc[1].term_id))
    return [c.term_id for _, c in scored[:3]]


def load_training_dir(
    dir_path: str | Path, vocabulary: Vocabulary
) -> tuple[dict[str, str], list[tuple[CandidateFeatures, bool]]]:
    """Read a labeled corpus directory: *.txt documents plus labels.tsv
    (`doc_id<TAB>term_id<TAB>label` lines). Features are recomputed from
    the documents with the directory itself as the global corpus."""
    d = Path(dir_path)
    docs = {p.stem: p.read_text(encoding="utf-8") for p in sorted(d.glob("*.txt"))}
    if not docs:
        raise TrainingError(f"no .txt documents in {d}")
    stats = build_corpus_stats(list(docs.values()), vocabulary)
    features = {
        doc_id: {c.term_id: c for c in identify_candidates(text, vocabulary, stats)}
        for doc_id, text in docs.items()
    }
    labeled = []
    for line in (d / "labels.tsv").read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        doc_id, term_id, label = line.split("\t")
        cand = features.get(doc_id, {}).get(int(term_id))
        if cand is None:
            raise TrainingError(f"labels.tsv names term {term_id} not matched in {doc_id}")
        labeled.append((cand, label == "1"))
    return docs, labeled


def train_nb_from_dir(dir_path: str | Path, vocabulary: Vocabulary) -> NbModel:
    _, labeled = load_training_dir(dir_path, vocabulary)
    return nb_train(labeled)


def default_nb_model(vocabulary: Vocabulary) -> NbModel:
    """Model trained from the packaged labeled corpus."""
    from .model import builtin_data_path

    return train_nb_from_dir(builtin_data_path("nbtrain"), vocabulary)


def classify_course(keywords: list[int] | tuple[int, ...], vocabulary: Vocabulary) -> Discipline:
    """Majority vote over keyword disciplines; `both` keywords count for both sides."""
    electrical = mechanical = 0
    for kid in keywords:
        d = vocabulary.get(kid).discipline
        if d in (Discipline.ELECTRICAL, Discipline.BOTH):
            electrical += 1
        if d in (Discipline.MECHANICAL, Discipline.BOTH):
            mechanical += 1
    if electrical > mechanical:
        return Discipline.ELECTRICAL
    if mechanical > electrical:
        return Discipline.MECHANICAL
    return Discipline.BOTH
