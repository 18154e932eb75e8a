"""Wrapper induction: learn byte-level prefix/suffix extraction rules from
labeled pages, then apply them to similarly templated pages to pull course
records out of markup."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .model import DomainError

MAX_CONTEXT = 64  # bytes of surrounding context considered for a rule
CAPTURE_WINDOW = 16 * 1024  # max bytes scanned for a suffix after a prefix match

TAG_RE = re.compile(rb"<[^>]*>")


class RuleLearningError(DomainError):
    pass


@dataclass(frozen=True)
class LabeledExample:
    page: bytes
    targets: dict[str, str]  # field -> exact substring occurring in page


@dataclass(frozen=True)
class ExtractionRule:
    field: str
    prefix: bytes
    suffix: bytes


@dataclass(frozen=True)
class ExtractedRecord:
    provider: str
    title: str
    description: str
    source_url: str


def strip_markup(raw: bytes) -> str:
    """Drop tags, collapse whitespace."""
    text = TAG_RE.sub(b" ", raw).decode("utf-8", errors="replace")
    return " ".join(text.split())


def _common_suffix(parts: list[bytes]) -> bytes:
    out = parts[0]
    for p in parts[1:]:
        n = 0
        while n < min(len(out), len(p)) and out[-1 - n] == p[-1 - n]:
            n += 1
        out = out[-n:] if n else b""
        if not out:
            break
    return out


def _common_prefix(parts: list[bytes]) -> bytes:
    out = parts[0]
    for p in parts[1:]:
        n = 0
        while n < min(len(out), len(p)) and out[n] == p[n]:
            n += 1
        out = out[:n]
        if not out:
            break
    return out


def _field_matches(page: bytes, rule: ExtractionRule) -> list[tuple[int, bytes]]:
    """All (position, raw capture) spans for one rule, left to right."""
    matches = []
    pos = 0
    while True:
        start = page.find(rule.prefix, pos)
        if start < 0:
            break
        begin = start + len(rule.prefix)
        end = page.find(rule.suffix, begin, begin + CAPTURE_WINDOW)
        if end < 0:
            pos = begin
            continue
        matches.append((start, page[begin:end]))
        pos = end + len(rule.suffix)
    return matches


def _rule_extracts_exactly(rule: ExtractionRule, examples: list[LabeledExample]) -> bytes | None:
    """None if the rule recovers exactly each example's target; else an offending span."""
    for ex in examples:
        captured = [c for _, c in _field_matches(ex.page, rule)]
        want = ex.targets[rule.field].encode("utf-8")
        if captured != [want]:
            for c in captured:
                if c != want:
                    return c
            return b""  # target missed entirely
    return None


def _snap_suffix(common_after: bytes, ls: int) -> bytes:
    """Extend a candidate suffix so it never ends inside a markup tag."""
    cand = common_after[:ls]
    lt = cand.rfind(b"<")
    if lt >= 0 and b">" not in cand[lt:]:
        gt = common_after.find(b">", ls)
        if gt >= 0:
            return common_after[: gt + 1]
    return cand


def _snap_prefix(common_before: bytes, lp: int) -> bytes:
    """Extend a candidate prefix so it never starts inside a markup tag."""
    cand = common_before[-lp:]
    gt = cand.find(b">")
    if gt >= 0 and b"<" not in cand[:gt]:
        lt = common_before.rfind(b"<", 0, len(common_before) - lp)
        if lt >= 0:
            return common_before[lt:]
    return cand


def learn_rule(field: str, examples: list[LabeledExample]) -> ExtractionRule:
    """Shortest (prefix, suffix) pair of the examples' common byte contexts that
    re-extracts every training target exactly and nothing else."""
    befores, afters = [], []
    for ex in examples:
        target = ex.targets.get(field)
        if not target:
            raise RuleLearningError(f"example lacks a target for field {field!r}")
        at = ex.page.find(target.encode("utf-8"))
        if at < 0:
            raise RuleLearningError(f"target for {field!r} not found in its page")
        befores.append(ex.page[max(0, at - MAX_CONTEXT) : at])
        afters.append(ex.page[at + len(target) : at + len(target) + MAX_CONTEXT])
    common_before = _common_suffix(befores)
    common_after = _common_prefix(afters)
    if not common_before or not common_after:
        raise RuleLearningError(
            f"field {field!r}: no common context around targets; rule underdetermined"
        )
    last_offender = b""
    for lp in range(1, len(common_before) + 1):
        for ls in range(1, len(common_after) + 1):
            rule = ExtractionRule(
                field=field,
                prefix=_snap_prefix(common_before, lp),
                suffix=_snap_suffix(common_after, ls),
            )
            offender = _rule_extracts_exactly(rule, examples)
            if offender is None:
                return rule
            last_offender = offender
    raise RuleLearningError(
        f"field {field!r}: every candidate rule over-matches "
        f"(e.g. span {last_offender[:80]!r}); template ambiguous"
    )


def learn_rules(examples: list[LabeledExample]) -> list[ExtractionRule]:
    fields: list[str] = []
    for ex in examples:
        for f in ex.targets:
            if f not in fields:
                fields.append(f)
    return [
        learn_rule(f, [ex for ex in examples if f in ex.targets]) for f in fields
    ]


def apply_rules(
    rules: list[ExtractionRule],
    page: bytes,
    source_url: str,
    default_provider: str = "",
    warnings: list[str] | None = None,
) -> list[ExtractedRecord]:
    """Scan the page with every rule, then group field hits in document order:
    each title hit starts a record; other fields join the current (or next)
    record if that slot is still empty."""
    rule_by_field = {r.field: r for r in rules}
    hits: list[tuple[int, str, str]] = []
    for r in rules:
        for pos, raw in _field_matches(page, r):
            hits.append((pos, r.field, strip_markup(raw)))
        if warnings is not None and page.find(r.prefix) >= 0 and not _field_matches(page, r):
            warnings.append(f"field {r.field}: prefix present but no suffix within window")
    hits.sort(key=lambda h: h[0])

    records: list[dict[str, str]] = []
    pending: dict[str, str] = {}
    current: dict[str, str] | None = None
    for _, fieldname, value in hits:
        if fieldname == "title":
            current = dict(pending)
            pending.clear()
            current["title"] = value
            records.append(current)
        elif current is not None and fieldname not in current:
            current[fieldname] = value
        elif current is None and fieldname not in pending:
            pending[fieldname] = value
    if "title" not in rule_by_field:
        raise RuleLearningError("rules must include a title field")
    return [
        ExtractedRecord(
            provider=r.get("provider", default_provider),
            title=r["title"],
            description=r.get("description", ""),
            source_url=source_url,
        )
        for r in records
        if r.get("title")
    ]


def load_corpus_examples(provider_dir: str | Path) -> list[LabeledExample]:
    """Read `examples.tsv` (file, field, target substring) under a provider dir."""
    d = Path(provider_dir)
    per_file: dict[str, dict[str, str]] = {}
    for line in (d / "examples.tsv").read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        fname, fieldname, target = line.split("\t", 2)
        per_file.setdefault(fname, {})[fieldname] = target
    return [
        LabeledExample(page=(d / "pages" / fname).read_bytes(), targets=targets)
        for fname, targets in per_file.items()
    ]


def load_manifest(provider_dir: str | Path) -> dict[str, str]:
    """`manifest.tsv` lines: page file name, source url."""
    manifest = {}
    for line in (Path(provider_dir) / "manifest.tsv").read_text(encoding="utf-8").splitlines():
        if line.strip():
            fname, url = line.split("\t", 1)
            manifest[fname] = url
    return manifest


def extract_provider(provider_dir: str | Path) -> list[ExtractedRecord]:
    """Learn rules from a provider's labeled examples and run them over every page."""
    d = Path(provider_dir)
    rules = learn_rules(load_corpus_examples(d))
    manifest = load_manifest(d)
    records = []
    for fname in sorted(manifest):
        page = (d / "pages" / fname).read_bytes()
        records.extend(
            apply_rules(rules, page, manifest[fname], default_provider=d.name)
        )
    return records


def extract_corpus(corpus_dir: str | Path) -> list[ExtractedRecord]:
    records = []
    for provider_dir in sorted(p for p in Path(corpus_dir).iterdir() if p.is_dir()):
        records.extend(extract_provider(provider_dir))
    return records
