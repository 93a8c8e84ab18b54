"""Keyword disambiguation: active-context selection and three-step scoring.

Given a keyword, its candidate senses, and surrounding context words, the
pipeline is:

1. Base scores: mean sense-word relatedness between each sense and the
   active-context members.
2. Strategy rescoring: every sense gains (1 - maxScore) * strength, where
   strength compares the active context with the sense's description terms
   (set overlap, pairwise average, or a centroid comparison against a
   description embedding).
3. Frequency re-ranking: senses close enough to the leader additionally gain
   (1 - maxScore) * normFreq, a square-root-damped relative sense frequency.

Updates always add (1 - maxScore) times a value in [0, 1] to a score that is
at most maxScore, so scores stay in [0, 1] and never decrease.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .embeddings import EmbeddingModel, Vector, centroid
from .errors import ConfigError, ParseError
from .lexicon import Lexicon, Sense
from .relatedness import (
    DEFAULT_WEIGHTS,
    RelWeights,
    SifConfig,
    angular_relatedness,
    rel_sense_word_maybe,
    rel_words,
    sif_embeddings,
)
from .stopwords import default_stopwords


class Strategy(str, Enum):
    """How step 2 compares the active context with sense descriptions."""

    OVERLAP = "overlap"
    AVERAGE = "average"
    SIF = "sif"
    TOP_K = "topk"
    DOC_VEC = "docvec"


@dataclass(frozen=True)
class ContextConfig:
    """Active-context selection settings."""

    max_context: int = 4
    threshold: float = 0.5
    stopwords: frozenset[str] = field(default_factory=default_stopwords)

    def __post_init__(self) -> None:
        if self.max_context < 1:
            raise ValueError("max_context must be >= 1")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")


@dataclass(frozen=True)
class AlgoParams:
    """Scoring parameters for the three-step algorithm."""

    weights: RelWeights = DEFAULT_WEIGHTS
    proximity_factor: float = 0.75
    freq_a: float = 0.5
    freq_b: float = 0.5
    strategy: Strategy = Strategy.TOP_K
    k: int = 15

    def __post_init__(self) -> None:
        if not 0.0 <= self.proximity_factor <= 1.0:
            raise ValueError("proximity_factor must lie in [0, 1]")
        if self.freq_a < 0 or self.freq_b < 0 or abs(self.freq_a + self.freq_b - 1.0) > 1e-9:
            raise ValueError("freq_a and freq_b must be >= 0 and sum to 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class ActiveContext:
    """Context words kept for scoring: deduplicated, stopword-free, related to the target.

    Members are (word, relatedness-to-target) pairs sorted by descending
    relatedness; ties keep their original input order. The target itself is
    never a member.
    """

    target: str
    members: tuple[tuple[str, float], ...] = ()

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(w for w, _ in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> list[dict]:
        return [{"word": w, "relatedness": s} for w, s in self.members]


@dataclass(frozen=True)
class SenseScore:
    """Score of one candidate sense with its per-step contributions."""

    sense_id: str
    score: float
    step1: float
    step2_delta: float = 0.0
    step3_delta: float = 0.0

    def to_json(self) -> dict:
        return {
            "id": self.sense_id,
            "score": self.score,
            "trace": {
                "step1": self.step1,
                "step2_delta": self.step2_delta,
                "step3_delta": self.step3_delta,
            },
        }


@dataclass
class DocVecStore:
    """Precomputed per-sense document vectors for the DOC_VEC strategy."""

    vectors: dict[str, Vector]
    dim: int


def load_docvec_store(path: str | Path) -> DocVecStore:
    """Load a JSONL document-vector store: one {"id", "vector"} object per line."""
    path = Path(path)
    vectors: dict[str, Vector] = {}
    dim: int | None = None
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}: line {lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{where}: invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict) or "id" not in obj or "vector" not in obj:
                raise ParseError(f"{where}: expected an object with 'id' and 'vector'")
            sense_id, raw = obj["id"], obj["vector"]
            if not isinstance(sense_id, str) or not sense_id:
                raise ParseError(f"{where}: id must be a nonempty string")
            if not isinstance(raw, list) or not raw:
                raise ParseError(f"{where}: vector must be a nonempty list of numbers")
            try:
                vec = np.array(raw, dtype=np.float64)
            except (TypeError, ValueError):
                raise ParseError(f"{where}: vector must be a list of numbers") from None
            if vec.ndim != 1 or not np.all(np.isfinite(vec)):
                raise ParseError(f"{where}: vector components must be finite numbers")
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise ParseError(f"{where}: expected {dim} components, got {vec.shape[0]}")
            if sense_id in vectors:
                raise ParseError(f"{where}: duplicate id {sense_id!r}")
            vectors[sense_id] = vec
    if dim is None:
        raise ParseError(f"{path}: no document vectors found")
    return DocVecStore(vectors=vectors, dim=dim)


def build_sif_store(
    model: EmbeddingModel, lexicon: Lexicon, cfg: SifConfig = SifConfig()
) -> dict[str, Vector]:
    """Description embeddings for every sense, keyed by sense id.

    Description terms are whitespace-tokenized into one bag per sense.
    """
    descriptions = {
        sense.id: [tok for term in sense.description_terms for tok in term.split()]
        for sense in lexicon.senses.values()
    }
    return sif_embeddings(model, descriptions, cfg)


def select_active_context(
    model: EmbeddingModel,
    context_words: Sequence[str],
    keyword: str,
    cfg: ContextConfig = ContextConfig(),
) -> ActiveContext:
    """Pick the context words most related to the keyword.

    Case-insensitive deduplication keeps first occurrences; stopwords and the
    keyword itself are dropped. Survivors are scored with word relatedness
    against the keyword, filtered at ``cfg.threshold``, sorted by descending
    score (ties keep input order), and truncated to ``cfg.max_context``.
    """
    if not keyword:
        raise ValueError("keyword must be nonempty")
    kd_norm = keyword.lower()
    seen: set[str] = set()
    candidates: list[str] = []
    for word in context_words:
        norm = word.lower()
        if not norm or norm in seen:
            continue
        seen.add(norm)
        if norm in cfg.stopwords or norm == kd_norm:
            continue
        candidates.append(word)
    scored: list[tuple[str, float]] = []
    for word in candidates:
        r = rel_words(model, word, keyword)
        if r is not None and r >= cfg.threshold:
            scored.append((word, r))
    scored.sort(key=lambda member: -member[1])
    return ActiveContext(target=keyword, members=tuple(scored[: cfg.max_context]))


def step1_base_scores(
    model: EmbeddingModel,
    lexicon: Optional[Lexicon],
    senses: Sequence[Sense],
    ca: ActiveContext,
    weights: RelWeights = DEFAULT_WEIGHTS,
) -> list[SenseScore]:
    """Mean sense-word relatedness against the active context, per sense.

    Context members the sense cannot be related to are skipped with the
    denominator reduced; an empty (or fully missing) context yields 0.
    """
    out = []
    for sense in senses:
        total = 0.0
        n = 0
        for word, _ in ca.members:
            r = rel_sense_word_maybe(model, lexicon, sense, word, weights)
            if r is None:
                continue
            total += r
            n += 1
        base = total / n if n else 0.0
        out.append(SenseScore(sense_id=sense.id, score=base, step1=base))
    return out


def _normalized_word_set(terms: Iterable[str], stopwords: frozenset[str]) -> set[str]:
    return {
        tok
        for term in terms
        for tok in term.lower().split()
        if tok and tok not in stopwords
    }


def overlap(
    ca: ActiveContext,
    description: Iterable[str],
    stopwords: frozenset[str] | None = None,
) -> float:
    """Set overlap between active-context words and description words.

    Description terms are lowercased, whitespace-split, and stripped of
    stopwords; context members are compared as whole lowercased entries.
    Returns |description & context| / min(|description|, |context|),
    or 0 when either side is empty.
    """
    stop = default_stopwords() if stopwords is None else stopwords
    ca_words = {w.lower() for w in ca.words}
    desc_words = _normalized_word_set(description, stop)
    if not ca_words or not desc_words:
        return 0.0
    return len(desc_words & ca_words) / min(len(desc_words), len(ca_words))


def _context_vectors(model: EmbeddingModel, ca: ActiveContext) -> list[Vector]:
    out = []
    for word, _ in ca.members:
        v = model.phrase_vector(word)
        if v is not None and v.any():
            out.append(v)
    return out


def _nonzero_centroid(vectors: Sequence[Vector]) -> Optional[Vector]:
    if not vectors:
        return None
    c = centroid(vectors)
    return c if c.any() else None


def _strategy_strength(
    model: EmbeddingModel,
    sense: Sense,
    ca: ActiveContext,
    params: AlgoParams,
    ca_centroid: Optional[Vector],
    ca_vectors: Sequence[Vector],
    sif_store: Optional[dict[str, Vector]],
    docvec_store: Optional[DocVecStore],
    stopwords: frozenset[str],
) -> Optional[float]:
    """Strategy strength in [0, 1], or None when the inputs are unavailable."""
    if params.strategy is Strategy.OVERLAP:
        return overlap(ca, sense.description_terms, stopwords)

    if params.strategy is Strategy.AVERAGE:
        if not ca.words or not sense.description_terms:
            return None
        total = 0.0
        n = 0
        for word in ca.words:
            for term in sense.description_terms:
                r = rel_words(model, word, term)
                if r is None:
                    continue
                total += r
                n += 1
        return total / n if n else None

    if ca_centroid is None:
        return None

    if params.strategy is Strategy.SIF:
        assert sif_store is not None
        v = sif_store.get(sense.id)
        if v is None or not v.any():
            return None
        return angular_relatedness(ca_centroid, v)

    if params.strategy is Strategy.DOC_VEC:
        assert docvec_store is not None
        v = docvec_store.vectors.get(sense.id)
        if v is None or not v.any():
            return None
        return angular_relatedness(ca_centroid, v)

    # TOP_K: compare the context centroid against the centroid of the k
    # description-term vectors nearest to the centroid of context + keyword.
    term_vectors = [
        v
        for term in sense.description_terms
        if (v := model.phrase_vector(term)) is not None and v.any()
    ]
    if not term_vectors:
        return None
    reference_parts = list(ca_vectors)
    kd_vec = model.phrase_vector(ca.target)
    if kd_vec is not None and kd_vec.any():
        reference_parts.append(kd_vec)
    reference = _nonzero_centroid(reference_parts)
    if reference is None:
        return None
    ranked = sorted(
        range(len(term_vectors)),
        key=lambda i: -angular_relatedness(reference, term_vectors[i]),
    )
    top = [term_vectors[i] for i in ranked[: params.k]]
    top_centroid = _nonzero_centroid(top)
    if top_centroid is None:
        return None
    return angular_relatedness(ca_centroid, top_centroid)


def step2_rescore(
    model: EmbeddingModel,
    lexicon: Optional[Lexicon],
    scores: Sequence[SenseScore],
    ca: ActiveContext,
    params: AlgoParams = AlgoParams(),
    sif_store: Optional[dict[str, Vector]] = None,
    docvec_store: Optional[DocVecStore] = None,
    stopwords: frozenset[str] | None = None,
) -> list[SenseScore]:
    """Add (1 - maxScore) * strategy strength to every sense's score.

    Senses whose strategy inputs are unavailable (all description terms out
    of vocabulary, sense id absent from a store, empty context for the
    centroid strategies) keep their step-1 score unchanged.
    """
    if params.strategy is Strategy.SIF and sif_store is None:
        raise ConfigError("strategy 'sif' requires a description-embedding store")
    if params.strategy is Strategy.DOC_VEC:
        if docvec_store is None:
            raise ConfigError("strategy 'docvec' requires a document-vector store")
        if docvec_store.dim != model.dim:
            raise ConfigError(
                f"document-vector dimension {docvec_store.dim} != model dimension {model.dim}"
            )
    if lexicon is None:
        raise ConfigError("step 2 requires the lexicon that defined the senses")
    stop = default_stopwords() if stopwords is None else stopwords
    if not scores:
        return []
    max_score = max(s.score for s in scores)
    factor = 1.0 - max_score
    ca_vectors = _context_vectors(model, ca)
    ca_centroid = _nonzero_centroid(ca_vectors)
    out = []
    for s in scores:
        sense = lexicon.resolve(s.sense_id)
        strength = _strategy_strength(
            model, sense, ca, params, ca_centroid, ca_vectors, sif_store, docvec_store, stop
        )
        if strength is None:
            out.append(replace(s))
            continue
        delta = factor * strength
        out.append(replace(s, score=s.score + delta, step2_delta=delta))
    return out


def norm_freq(sense: Sense, total_freq: float, a: float = 0.5, b: float = 0.5) -> float:
    """Square-root-damped relative frequency: sqrt(a * freq / total + b)."""
    if total_freq <= 0:
        raise ValueError("total frequency must be positive")
    return math.sqrt(a * sense.frequency / total_freq + b)


def step3_frequency(
    scores: Sequence[SenseScore],
    senses: Sequence[Sense],
    params: AlgoParams = AlgoParams(),
) -> list[SenseScore]:
    """Boost senses within the proximity gate by (1 - maxScore) * normFreq.

    Only senses with score strictly above proximity_factor * maxScore are
    boosted. When every candidate frequency is zero the step is skipped.
    """
    by_id = {s.id: s for s in senses}
    total = sum(s.frequency for s in senses)
    if not scores or total <= 0:
        return [replace(s) for s in scores]
    max_score = max(s.score for s in scores)
    factor = 1.0 - max_score
    gate = params.proximity_factor * max_score
    out = []
    for s in scores:
        if s.score > gate:
            boost = factor * norm_freq(by_id[s.sense_id], total, params.freq_a, params.freq_b)
            out.append(replace(s, score=s.score + boost, step3_delta=boost))
        else:
            out.append(replace(s))
    return out


@dataclass(frozen=True)
class DisambiguationResult:
    """Ranked senses for one keyword, with the context that produced them."""

    keyword: str
    active_context: ActiveContext
    scores: tuple[SenseScore, ...]

    @property
    def top(self) -> SenseScore:
        return self.scores[0]

    def to_dict(self) -> dict:
        return {
            "keyword": self.keyword,
            "active_context": self.active_context.to_json(),
            "senses": [s.to_json() for s in self.scores],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def disambiguate(
    model: EmbeddingModel,
    lexicon: Lexicon,
    keyword: str,
    context_words: Sequence[str],
    cfg: ContextConfig = ContextConfig(),
    params: AlgoParams = AlgoParams(),
    sif_store: Optional[dict[str, Vector]] = None,
    docvec_store: Optional[DocVecStore] = None,
) -> DisambiguationResult:
    """Rank the senses of ``keyword`` against its context.

    Raises ValueError for keywords without senses. The returned ranking is
    sorted by descending score; ties keep lexicon file order.
    """
    senses = lexicon.senses_of(keyword)
    if not senses:
        raise ValueError(f"unknown keyword: {keyword!r}")
    ca = select_active_context(model, context_words, keyword, cfg)
    scores = step1_base_scores(model, lexicon, senses, ca, params.weights)
    scores = step2_rescore(
        model, lexicon, scores, ca, params, sif_store, docvec_store, cfg.stopwords
    )
    scores = step3_frequency(scores, senses, params)
    ranked = sorted(scores, key=lambda s: -s.score)
    return DisambiguationResult(keyword=keyword, active_context=ca, scores=tuple(ranked))
