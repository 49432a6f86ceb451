"""Generation metrics: BLEU, ROUGE-1/2/L, and an embedding-matching score.

BLEU comes in two flavors. `sentence_bleu` smooths zero n-gram matches with a
tiny epsilon numerator so it can rank near-duplicates (used by the template
candidate filter). `corpus_bleu` pools match/total counts over the whole corpus
and applies no smoothing, which is what the evaluation report uses.

The embedding score is a greedy token-matching procedure over caller-supplied
unit vectors; no encoder is run here.
"""

from __future__ import annotations

import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import kernels
from .corpus import EmbeddingTable

SENTENCE_BLEU_EPS = 1e-9

MODE_MODEL = "model"
MODE_SOURCE = "source-as-output"
MODE_EXEMPLAR = "exemplar-as-output"
EVAL_MODES = (MODE_MODEL, MODE_SOURCE, MODE_EXEMPLAR)


class PRF(NamedTuple):
    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _closest_ref_length(candidate_len: int, references: Sequence[Sequence[str]]) -> int:
    # ties go to the shorter reference
    return min((abs(len(r) - candidate_len), len(r)) for r in references)[1]


def _clipped_matches(candidate: Sequence[str], references: Sequence[Sequence[str]], n: int) -> tuple[int, int]:
    cand = ngram_counts(candidate, n)
    total = max(len(candidate) - n + 1, 0)
    if not cand:
        return 0, total
    limit: Counter = Counter()
    for ref in references:
        for gram, count in ngram_counts(ref, n).items():
            if count > limit[gram]:
                limit[gram] = count
    matched = sum(min(count, limit[gram]) for gram, count in cand.items())
    return matched, total


def sentence_bleu(
    candidate: Sequence[str],
    references: Sequence[Sequence[str]],
    max_n: int = 4,
) -> float:
    """Smoothed sentence BLEU in [0, 1].

    Orders above the candidate length are skipped; zero match counts are
    replaced by SENTENCE_BLEU_EPS so disjoint sentences score ~0 instead of
    exactly 0 (which would make every zero-overlap pair indistinguishable).
    """
    if not references or any(not r for r in references):
        raise ValueError("references must be non-empty")
    if not candidate:
        warnings.warn("BLEU of an empty candidate is 0", RuntimeWarning, stacklevel=2)
        return 0.0
    orders = min(max_n, len(candidate))
    log_prec = 0.0
    for n in range(1, orders + 1):
        matched, total = _clipped_matches(candidate, references, n)
        log_prec += math.log((matched if matched > 0 else SENTENCE_BLEU_EPS) / total)
    r = _closest_ref_length(len(candidate), references)
    bp = 1.0 if len(candidate) >= r else math.exp(1.0 - r / len(candidate))
    return bp * math.exp(log_prec / orders)


def corpus_bleu(
    pairs: Iterable[tuple[Sequence[str], Sequence[Sequence[str]]]],
    max_n: int = 4,
) -> float:
    """Corpus BLEU: pool clipped matches and totals, then geometric mean + BP."""
    matched = [0] * max_n
    totals = [0] * max_n
    cand_len = 0
    ref_len = 0
    seen = False
    for candidate, references in pairs:
        seen = True
        if not references or any(not r for r in references):
            raise ValueError("references must be non-empty")
        if not candidate:
            continue
        cand_len += len(candidate)
        ref_len += _closest_ref_length(len(candidate), references)
        for n in range(1, max_n + 1):
            m, t = _clipped_matches(candidate, references, n)
            matched[n - 1] += m
            totals[n - 1] += t
    if not seen:
        raise ValueError("corpus_bleu needs at least one pair")
    if cand_len == 0:
        return 0.0
    log_prec = 0.0
    orders = 0
    for m, t in zip(matched, totals):
        if t == 0:
            continue
        if m == 0:
            return 0.0
        log_prec += math.log(m / t)
        orders += 1
    if orders == 0:
        return 0.0
    bp = 1.0 if cand_len >= ref_len else math.exp(1.0 - ref_len / cand_len)
    return bp * math.exp(log_prec / orders)


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> PRF:
    """N-gram overlap precision/recall/F1 (multiset intersection)."""
    cand = ngram_counts(candidate, n)
    ref = ngram_counts(reference, n)
    overlap = sum((cand & ref).values())
    cand_total = max(len(candidate) - n + 1, 0)
    ref_total = max(len(reference) - n + 1, 0)
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    return PRF(precision, recall, _f1(precision, recall))


def _intern(candidate: Sequence[str], reference: Sequence[str]) -> tuple[list[int], list[int]]:
    ids: dict[str, int] = {}
    return (
        [ids.setdefault(t, len(ids)) for t in candidate],
        [ids.setdefault(t, len(ids)) for t in reference],
    )


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> PRF:
    """Longest-common-subsequence precision/recall/F1."""
    if not candidate or not reference:
        return PRF(0.0, 0.0, 0.0)
    a, b = _intern(candidate, reference)
    lcs = kernels.lcs_length(a, b)
    precision = lcs / len(candidate)
    recall = lcs / len(reference)
    return PRF(precision, recall, _f1(precision, recall))


def embed_match_score(
    cand_vectors: Sequence[np.ndarray], ref_vectors: Sequence[np.ndarray]
) -> PRF:
    """Greedy cosine matching over unit token vectors.

    Recall averages, over reference tokens, the best cosine to any candidate
    token; precision is the mirror image. Negative averages are floored at 0
    so the score stays in [0, 1].
    """
    if not cand_vectors or not ref_vectors:
        raise ValueError("both vector lists must be non-empty")
    cand = np.asarray(cand_vectors, dtype=np.float64)
    ref = np.asarray(ref_vectors, dtype=np.float64)
    if cand.ndim != 2 or ref.ndim != 2 or cand.shape[1] != ref.shape[1]:
        raise ValueError(f"vector dimensions disagree: {cand.shape} vs {ref.shape}")
    sims = cand @ ref.T
    precision = min(max(float(sims.max(axis=1).mean()), 0.0), 1.0)
    recall = min(max(float(sims.max(axis=0).mean()), 0.0), 1.0)
    return PRF(precision, recall, _f1(precision, recall))


@dataclass(frozen=True)
class EvalReport:
    bleu: float
    rouge1_f: float
    rouge2_f: float
    rougeL_f: float
    embed_score: float | None
    n_pairs: int

    def as_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "rouge1": self.rouge1_f,
            "rouge2": self.rouge2_f,
            "rougeL": self.rougeL_f,
            "embed_score": self.embed_score,
            "n_pairs": self.n_pairs,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"


def _sentence_embed_f1(
    candidate: Sequence[str], reference: Sequence[str], vectors: EmbeddingTable
) -> float:
    # tokens without a vector are skipped rather than failing the whole corpus
    cand = [vectors[t] for t in candidate if t in vectors]
    ref = [vectors[t] for t in reference if t in vectors]
    if not cand or not ref:
        return 0.0
    return embed_match_score(cand, ref).f1


def evaluate_corpus(
    outputs: Mapping[str, Sequence[str]],
    references: Mapping[str, Sequence[str]],
    mode: str = MODE_MODEL,
    vectors: EmbeddingTable | None = None,
    sources: Mapping[str, Sequence[str]] | None = None,
    templates: Mapping[str, Sequence[str]] | None = None,
) -> EvalReport:
    """Score a corpus of outputs against references.

    In the copy-baseline modes the outputs map is replaced wholesale: by the
    sources map for source-as-output, by the templates map for
    exemplar-as-output. ROUGE and the embedding score average per-sentence F1;
    BLEU is pooled corpus-level.
    """
    if mode not in EVAL_MODES:
        raise ValueError(f"unknown eval mode {mode!r}, expected one of {EVAL_MODES}")
    if mode == MODE_SOURCE:
        if sources is None:
            raise ValueError("source-as-output mode needs the sources map")
        outputs = sources
    elif mode == MODE_EXEMPLAR:
        if templates is None:
            raise ValueError("exemplar-as-output mode needs the templates map")
        outputs = templates
    if not references:
        raise ValueError("references must not be empty")
    for key in references:
        if key not in outputs:
            raise ValueError(f"output missing for id {key!r}")
    for key in outputs:
        if key not in references:
            raise ValueError(f"reference missing for id {key!r}")

    ids = list(references)
    rouge1 = rouge2 = rougel = 0.0
    embed_total = 0.0
    for key in ids:
        out = list(outputs[key])
        ref = list(references[key])
        rouge1 += rouge_n(out, ref, 1).f1
        rouge2 += rouge_n(out, ref, 2).f1
        rougel += rouge_l(out, ref).f1
        if vectors is not None:
            embed_total += _sentence_embed_f1(out, ref, vectors)
    n = len(ids)
    bleu = corpus_bleu((list(outputs[key]), [list(references[key])]) for key in ids)
    return EvalReport(
        bleu=bleu,
        rouge1_f=rouge1 / n,
        rouge2_f=rouge2 / n,
        rougeL_f=rougel / n,
        embed_score=(embed_total / n) if vectors is not None else None,
        n_pairs=n,
    )
