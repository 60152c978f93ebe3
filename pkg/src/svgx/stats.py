"""Corpus analytics: element counts, group histogram, word frequencies,
and the comment/whitespace-stripped code length metric."""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass, field

from .ir import canonical_serialize
from .normalizer import NormalizeOptions, normalize
from .parser import RawSvg

_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_WS_RE = re.compile(r"\s+")
_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


@dataclass
class CorpusStats:
    element_counts_before: Counter = field(default_factory=Counter)
    element_counts_after: Counter = field(default_factory=Counter)
    group_count_histogram: Counter = field(default_factory=Counter)
    word_frequencies: Counter = field(default_factory=Counter)
    avg_tok_mean: float = 0.0
    documents: int = 0
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "documents": self.documents,
            "element_counts_before": dict(sorted(self.element_counts_before.items())),
            "element_counts_after": dict(sorted(self.element_counts_after.items())),
            "group_count_histogram": {
                str(k): v for k, v in sorted(self.group_count_histogram.items())},
            "word_frequencies": dict(
                sorted(self.word_frequencies.items(), key=lambda kv: (-kv[1], kv[0]))),
            "avg_tok_mean": self.avg_tok_mean,
            "failures": list(self.failures),
        }


def avg_tok(svg_text: str) -> int:
    """Byte length after deleting XML comments and all whitespace."""
    stripped = _COMMENT_RE.sub("", svg_text)
    stripped = _WS_RE.sub("", stripped)
    return len(stripped.encode("utf-8"))


def words(text: str):
    """Lowercase, strip ASCII punctuation, split on whitespace."""
    for raw in text.lower().split():
        word = raw.translate(_PUNCT_TABLE)
        if word:
            yield word


def corpus_stats(files, opts: NormalizeOptions | None = None) -> CorpusStats:
    """Accumulate stats over (RawSvg, caption, desc) triples.

    Per-file parse errors are collected in `failures`, not raised.
    """
    stats = CorpusStats()
    total_tok = 0
    for raw, caption, desc in files:
        try:
            doc, report = normalize(raw, opts)
        except Exception as exc:
            stats.failures.append(f"{raw.source_path or '<input>'}: {exc}")
            continue
        stats.documents += 1
        stats.element_counts_before.update(report.counts_before)
        stats.element_counts_after.update(report.counts_after)
        groups = sum(1 for n in doc.walk() if n.kind == "group")
        stats.group_count_histogram[groups] += 1
        total_tok += avg_tok(canonical_serialize(doc))
        for text in (caption, desc):
            if text:
                stats.word_frequencies.update(words(text))
    if stats.documents:
        stats.avg_tok_mean = total_tok / stats.documents
    return stats
