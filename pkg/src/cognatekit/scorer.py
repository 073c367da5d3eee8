"""Weighted blend of retrieval similarity and the transformation score.

The raw retrieval similarity is unbounded, so it is first mapped into
[0, 1]: per query over the candidate set when ranking, or with min/max
bounds learned from training pairs when classifying single pairs.  The
blended score is

    sim_weight * normalized_similarity + (1 - sim_weight) * transformation_score

and a pair is called a cognate when the blend reaches the decision
threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .errors import ConfigError, TrainingError
from .error_model import ErrorModel, train_error_model
from .ranking import LexiconIndex, RankerParams, build_index, sim
from .shingling import ShinglerConfig, ShingleSet, shingle

NORMALIZATION_MODES = ("per_query_minmax", "trained_minmax")


@dataclass(frozen=True)
class ScoreConfig:
    """Blend weight, ranking function, normalization mode, and threshold."""

    sim_weight: float = 0.6
    ranker: RankerParams = field(default_factory=RankerParams)
    normalization: str = "trained_minmax"
    threshold: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.sim_weight <= 1.0:
            raise ConfigError(f"similarity weight must be in [0, 1], got {self.sim_weight}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.normalization not in NORMALIZATION_MODES:
            raise ConfigError(
                f"unknown normalization {self.normalization!r}; "
                f"expected one of {NORMALIZATION_MODES}"
            )


class CombinedScorer:
    """Immutable scorer pairing a trained transformation model with an index."""

    def __init__(
        self,
        config: ScoreConfig,
        error_model: ErrorModel,
        index: LexiconIndex,
        sim_min: Optional[float] = None,
        sim_max: Optional[float] = None,
    ):
        if error_model.config != index.config:
            raise ConfigError("error model and index use different shingler configs")
        if sim_min is not None and sim_max is not None and not sim_min < sim_max:
            raise TrainingError(
                f"normalization bounds must satisfy min < max, got [{sim_min}, {sim_max}]"
            )
        self.config = config
        self.error_model = error_model
        self.index = index
        self.sim_min = sim_min
        self.sim_max = sim_max

    @property
    def shingler_config(self) -> ShinglerConfig:
        return self.error_model.config

    def with_config(self, **changes) -> "CombinedScorer":
        return CombinedScorer(
            replace(self.config, **changes),
            self.error_model,
            self.index,
            self.sim_min,
            self.sim_max,
        )

    def _normalize_trained(self, raw: float) -> float:
        if self.sim_min is None or self.sim_max is None:
            raise TrainingError("normalization bounds were never learned")
        scaled = (raw - self.sim_min) / (self.sim_max - self.sim_min)
        return min(1.0, max(0.0, scaled))

    def blend(self, sim_norm: float, transformation: float) -> float:
        w = self.config.sim_weight
        return w * sim_norm + (1.0 - w) * transformation

    def combined_score(self, s: ShingleSet, t: ShingleSet) -> float:
        """Blended score of a single pair, in [0, 1].

        Under per-query normalization a lone pair is its own candidate
        set, so its normalized similarity degenerates to 0.5 and the
        transformation score decides.
        """
        if self.config.normalization == "trained_minmax":
            sim_norm = self._normalize_trained(sim(s, t, self.index, self.config.ranker))
        else:
            sim_norm = 0.5
        if self.config.sim_weight == 1.0:
            return sim_norm
        return self.blend(sim_norm, self.error_model.transformation_score(s, t))

    def score_pair(self, source: str, target: str) -> float:
        cfg = self.shingler_config
        return self.combined_score(shingle(source, cfg), shingle(target, cfg))

    def classify(self, source: str, target: str) -> bool:
        """True when the pair's blended score reaches the threshold."""
        return self.score_pair(source, target) >= self.config.threshold

    def score_candidates(self, query: ShingleSet, index: LexiconIndex) -> list[float]:
        """Blended scores for every document of ``index``, in document order."""
        if index.config != self.shingler_config:
            raise ConfigError("index does not match the scorer's shingler config")
        w = self.config.sim_weight
        if w > 0.0:
            raws = [sim(query, doc, index, self.config.ranker) for _, doc in index.docs]
            if self.config.normalization == "per_query_minmax":
                lo, hi = min(raws), max(raws)
                if hi > lo:
                    norms = [(raw - lo) / (hi - lo) for raw in raws]
                else:
                    norms = [0.5] * len(raws)
            else:
                norms = [self._normalize_trained(raw) for raw in raws]
        else:
            norms = [0.0] * len(index.docs)
        if w == 1.0:
            return norms
        return [
            self.blend(norm, self.error_model.transformation_score(query, doc))
            for norm, (_, doc) in zip(norms, index.docs)
        ]


def learn_threshold(scores: Sequence[float], labels: Sequence[bool]) -> float:
    """Accuracy-maximizing cutoff over midpoints of adjacent distinct scores.

    Classification is ``score >= threshold``; ties between candidates go
    to the smallest threshold.  A single distinct score is its own
    candidate.
    """
    if not scores or len(scores) != len(labels):
        raise TrainingError("threshold search needs one label per score")
    by_value: dict[float, list[int]] = {}
    for score, label in zip(scores, labels):
        counts = by_value.setdefault(score, [0, 0])
        counts[bool(label)] += 1
    values = sorted(by_value)
    if len(values) == 1:
        return values[0]
    # prefix negatives below each boundary, suffix positives at or above it
    neg_below = 0
    pos_at_or_above = sum(by_value[v][1] for v in values)
    best_threshold = None
    best_correct = -1
    for left, right in zip(values, values[1:]):
        neg_below += by_value[left][0]
        pos_at_or_above -= by_value[left][1]
        correct = neg_below + pos_at_or_above
        if correct > best_correct:
            best_correct = correct
            best_threshold = (left + right) / 2.0
    return best_threshold


def train_scorer(
    pairs: Sequence[tuple[str, str, bool]],
    shingler_config: ShinglerConfig,
    ranker: RankerParams,
    sim_weight: float = 0.6,
    alpha: float = 1.0,
    power: float = 1.0,
    threshold: Optional[float] = None,
) -> CombinedScorer:
    """Fit a classification-mode scorer on labeled (source, target, label) triples.

    The transformation model is trained on the positive pairs only; the
    similarity bounds come from raw sims of all training pairs against
    an index over the training targets; the threshold, unless given, is
    learned on the blended training scores.
    """
    if not pairs:
        raise TrainingError("training requires at least one labeled pair")
    positives = [(s, t) for s, t, label in pairs if label]
    if not positives:
        raise TrainingError("training requires at least one positive (cognate) pair")
    error_model = train_error_model(positives, shingler_config, alpha, power)
    index = build_index([t for _, t, _ in pairs], shingler_config)
    sets = [
        (shingle(s, shingler_config), shingle(t, shingler_config), label)
        for s, t, label in pairs
    ]
    raws = [sim(s, t, index, ranker) for s, t, _ in sets]
    sim_min, sim_max = min(raws), max(raws)
    if not sim_min < sim_max:
        raise TrainingError(
            "all training pairs have identical raw similarity; cannot learn bounds"
        )
    config = ScoreConfig(
        sim_weight=sim_weight,
        ranker=ranker,
        normalization="trained_minmax",
        threshold=0.0 if threshold is None else threshold,
    )
    scorer = CombinedScorer(config, error_model, index, sim_min, sim_max)
    if threshold is None:
        scores = [scorer.combined_score(s, t) for s, t, _ in sets]
        learned = learn_threshold(scores, [label for _, _, label in sets])
        scorer = scorer.with_config(threshold=learned)
    return scorer
