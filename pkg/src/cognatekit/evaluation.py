"""Experiment harness: datasets, splits, tuning, and the two experiments.

Experiment 1 (classification): decide cognate / non-cognate for held-out
labeled pairs and report accuracy.  Experiment 2 (retrieval): rank a
target-language lexicon for each held-out cognate's source word and
report the mean reciprocal rank of the true target.

Hyperparameters are chosen by k-fold cross-validated grid search on the
training split; all randomness flows from one seed and splits are keyed
to stable pair identity, so results do not depend on input file order.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .baselines import BASELINE_METHODS, baseline_similarity
from .errors import ConfigError, DataError, InvalidWordError, TrainingError
from .error_model import pair_edges
from .ranking import (
    LexiconIndex,
    RankerParams,
    build_index,
    order_scored,
    rank,
    sim,
    target_rank,
)
from .scorer import CombinedScorer, learn_threshold, train_scorer
from .shingling import ShinglerConfig, ShingleSet, normalize_word, shingle


@dataclass(frozen=True)
class LabeledPair:
    source: str
    target: str
    label: bool
    language_pair: str = ""

    @property
    def identity(self) -> tuple:
        return (self.source, self.target, self.label, self.language_pair)


def load_dataset(path, language_pair: str = "") -> list[LabeledPair]:
    """Read a TSV dataset of ``source<TAB>target<TAB>label`` lines.

    Labels are 0/1; blank lines are skipped.  Any malformed line raises
    :class:`DataError` with its line number.
    """
    pairs = []
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read dataset file {path}: {exc}") from exc
    with handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise DataError(
                    f"{path}:{lineno}: expected 3 tab-separated fields, got {len(fields)}"
                )
            source, target, label = fields
            if label not in ("0", "1"):
                raise DataError(f"{path}:{lineno}: label must be 0 or 1, got {label!r}")
            try:
                pairs.append(
                    LabeledPair(
                        normalize_word(source.strip()),
                        normalize_word(target.strip()),
                        label == "1",
                        language_pair,
                    )
                )
            except InvalidWordError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
    if not pairs:
        raise DataError(f"{path}: dataset is empty")
    return pairs


def _label_groups(pairs: Sequence[LabeledPair]) -> list[list[LabeledPair]]:
    """Cognates first, then non-cognates, each sorted by stable identity."""
    groups = []
    for wanted in (True, False):
        group = sorted((p for p in pairs if p.label == wanted), key=lambda p: p.identity)
        if group:
            groups.append(group)
    return groups


def split(
    pairs: Sequence[LabeledPair],
    seed: int = 42,
    test_fraction: float = 0.25,
) -> tuple[list[LabeledPair], list[LabeledPair]]:
    """Deterministic stratified train/test split (3:1 by default).

    The test side gets floor(n * test_fraction) pairs, allocated across
    labels by largest remainder.  Membership depends only on the pairs'
    identities and the seed, never on input order.
    """
    n = len(pairs)
    if n < 4:
        raise DataError(f"need at least 4 labeled pairs to split, got {n}")
    rng = random.Random(seed)
    groups = _label_groups(pairs)
    for group in groups:
        rng.shuffle(group)
    test_total = int(n * test_fraction)
    quotas = [len(g) * test_fraction for g in groups]
    base = [int(q) for q in quotas]
    leftover = test_total - sum(base)
    by_remainder = sorted(
        range(len(groups)), key=lambda i: (-(quotas[i] - base[i]), i)
    )
    for i in by_remainder[:leftover]:
        base[i] += 1
    train: list[LabeledPair] = []
    test: list[LabeledPair] = []
    for group, take in zip(groups, base):
        test.extend(group[:take])
        train.extend(group[take:])
    return train, test


def stratified_folds(
    pairs: Sequence[LabeledPair], folds: int, seed: int
) -> list[list[LabeledPair]]:
    """Assign pairs to folds round-robin within shuffled label groups."""
    k = max(1, min(folds, len(pairs)))
    rng = random.Random(seed)
    assigned: list[list[LabeledPair]] = [[] for _ in range(k)]
    counter = 0
    for group in _label_groups(pairs):
        rng.shuffle(group)
        for pair in group:
            assigned[counter % k].append(pair)
            counter += 1
    return [fold for fold in assigned if fold]


def eval_classification(system, pairs: Sequence[LabeledPair]) -> float:
    """Fraction of pairs whose predicted label matches the truth."""
    if not pairs:
        raise DataError("cannot evaluate classification on an empty pair list")
    correct = sum(system.classify(p.source, p.target) == p.label for p in pairs)
    return correct / len(pairs)


def eval_mrr(
    system,
    pairs: Sequence[LabeledPair],
    lexicon: Sequence[str],
) -> tuple[float, list[int]]:
    """Mean reciprocal rank of the true targets over the positive pairs.

    Every true target must be present in the lexicon; a missing one is a
    data error naming the word.
    """
    queries = [p for p in pairs if p.label]
    if not queries:
        raise DataError("no positive pairs to rank")
    words = [normalize_word(w) for w in lexicon]
    available = set(words)
    for pair in queries:
        if pair.target not in available:
            raise DataError(f"true target {pair.target!r} is missing from the lexicon")
    ranks = []
    for pair in queries:
        ranking = system.rank(pair.source, words)
        position = next(i for i, (word, _) in enumerate(ranking) if word == pair.target)
        ranks.append(position + 1)
    mrr = sum(1.0 / r for r in ranks) / len(ranks)
    return mrr, ranks


class PipelineSystem:
    """End-to-end trainable system over the shingling/ranking/error-model stack.

    Classification uses trained min-max normalization and a learned
    threshold; ranking normalizes per query over the candidate set.
    With ``use_error_model=False`` the blend weight is pinned to 1 and
    only the ranking function speaks.
    """

    def __init__(
        self,
        shingler_config: ShinglerConfig,
        ranker: RankerParams,
        sim_weight: float = 0.6,
        alpha: float = 1.0,
        power: float = 1.0,
        threshold: Optional[float] = None,
        use_error_model: bool = True,
    ):
        self.shingler_config = shingler_config
        self.ranker = ranker
        self.use_error_model = use_error_model
        self.sim_weight = 1.0 if not use_error_model else sim_weight
        self.alpha = alpha
        self.power = power
        self.threshold = threshold
        self.scorer: Optional[CombinedScorer] = None
        self._index_cache: dict[tuple, LexiconIndex] = {}

    @classmethod
    def from_scorer(cls, scorer: CombinedScorer) -> "PipelineSystem":
        """Wrap an already-trained scorer (e.g. loaded from a model file)."""
        system = cls(
            scorer.shingler_config,
            scorer.config.ranker,
            sim_weight=scorer.config.sim_weight,
            alpha=scorer.error_model.alpha,
            power=scorer.error_model.power,
            threshold=scorer.config.threshold,
        )
        system.scorer = scorer
        return system

    def fit(self, train_pairs: Sequence[LabeledPair]) -> None:
        triples = [(p.source, p.target, p.label) for p in train_pairs]
        self.scorer = train_scorer(
            triples,
            self.shingler_config,
            self.ranker,
            sim_weight=self.sim_weight,
            alpha=self.alpha,
            power=self.power,
            threshold=self.threshold,
        )

    def _require_fit(self) -> CombinedScorer:
        if self.scorer is None:
            raise TrainingError("system must be fit before use")
        return self.scorer

    def score_pair(self, source: str, target: str) -> float:
        return self._require_fit().score_pair(source, target)

    def classify(self, source: str, target: str) -> bool:
        return self._require_fit().classify(source, target)

    def rank(
        self, query: str, lexicon: Sequence[str], k: Optional[int] = None
    ) -> list[tuple[str, float]]:
        scorer = self._require_fit().with_config(normalization="per_query_minmax")
        key = tuple(lexicon)
        index = self._index_cache.get(key)
        if index is None:
            index = build_index(lexicon, self.shingler_config)
            self._index_cache[key] = index
        return rank(query, index, scorer=scorer, k=k)


class BaselineSystem:
    """Threshold-classified string-similarity baseline."""

    def __init__(self, method: str):
        if method not in BASELINE_METHODS:
            raise ConfigError(
                f"unknown baseline method {method!r}; expected one of {BASELINE_METHODS}"
            )
        self.method = method
        self.threshold: Optional[float] = None

    def fit(self, train_pairs: Sequence[LabeledPair]) -> None:
        scores = [baseline_similarity(self.method, p.source, p.target) for p in train_pairs]
        labels = [p.label for p in train_pairs]
        self.threshold = learn_threshold(scores, labels)

    def score_pair(self, source: str, target: str) -> float:
        return baseline_similarity(self.method, source, target)

    def classify(self, source: str, target: str) -> bool:
        if self.threshold is None:
            raise TrainingError("baseline must be fit before use")
        return self.score_pair(source, target) >= self.threshold

    def rank(
        self, query: str, lexicon: Sequence[str], k: Optional[int] = None
    ) -> list[tuple[str, float]]:
        scores = [baseline_similarity(self.method, query, word) for word in lexicon]
        return order_scored(list(lexicon), scores, k)


DEFAULT_GRIDS = {
    "sim_weight": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
    "power": [0.25, 0.5, 1.0, 2.0, 4.0],
    "alpha": [1.0],
    "mu": [1.0, 5.0, 10.0, 50.0, 100.0],
    "k1": [1.2],
    "b": [0.75],
}
GRID_KEYS = ("sim_weight", "power", "alpha", "mu", "k1", "b")


def _resolve_grids(
    grids: Optional[dict], function: str, use_error_model: bool
) -> dict[str, list]:
    merged = {key: list(values) for key, values in DEFAULT_GRIDS.items()}
    if grids:
        for key, values in grids.items():
            if key not in merged:
                raise ConfigError(f"unknown grid parameter {key!r}")
            merged[key] = list(values)
    # Irrelevant dimensions collapse to their first value so the search
    # space only covers parameters the configuration can feel.
    if function != "dirichlet":
        merged["mu"] = merged["mu"][:1]
    if function != "bm25":
        merged["k1"] = merged["k1"][:1]
        merged["b"] = merged["b"][:1]
    if not use_error_model:
        merged["sim_weight"] = [1.0]
        merged["power"] = merged["power"][:1]
        merged["alpha"] = merged["alpha"][:1]
    for key, values in merged.items():
        if not values:
            raise ConfigError(f"grid for {key!r} is empty")
    return merged


def _clamp01(value: float) -> float:
    return min(1.0, max(0.0, value))


class _FoldCache:
    """Per-fold precomputation shared by every grid combination."""

    def __init__(self, train, val, config, function, use_error_model, lexicon_index):
        self.train = train
        self.val = val
        self.config = config
        self.function = function
        self.use_error_model = use_error_model
        self.sets: dict[str, ShingleSet] = {}
        self._edge_lists: dict[tuple[str, str], tuple] = {}
        self._raw: dict[tuple, tuple[list[float], list[float]]] = {}
        self._trans: dict[tuple, tuple[list[float], list[float]]] = {}
        self._raw_rows: dict[tuple, list[list[float]]] = {}
        self._trans_rows: dict[tuple, list[list[float]]] = {}
        self.counts: Counter = Counter()
        self.total = 0
        self.distinct = 1
        if use_error_model:
            positives = [p for p in train if p.label]
            if not positives:
                raise TrainingError("a cross-validation fold has no positive training pairs")
            for p in positives:
                self.counts.update(self._edges(p.source, p.target))
            self.total = sum(self.counts.values())
            self.distinct = len(self.counts) + 1
        self.index = build_index([p.target for p in train], config)
        self.lexicon_index = lexicon_index

    def _set(self, word: str) -> ShingleSet:
        cached = self.sets.get(word)
        if cached is None:
            cached = shingle(word, self.config)
            self.sets[word] = cached
        return cached

    def _edges(self, source: str, target: str) -> tuple:
        key = (source, target)
        cached = self._edge_lists.get(key)
        if cached is None:
            cached = pair_edges(source, target, self.config)
            self._edge_lists[key] = cached
        return cached

    def _params(self, mu: float, k1: float, b: float) -> RankerParams:
        return RankerParams(self.function, k1=k1, b=b, mu=mu)

    def raw_sims(self, mu, k1, b) -> tuple[list[float], list[float]]:
        key = (mu, k1, b)
        cached = self._raw.get(key)
        if cached is None:
            params = self._params(mu, k1, b)
            cached = tuple(
                [
                    sim(self._set(p.source), self._set(p.target), self.index, params)
                    for p in part
                ]
                for part in (self.train, self.val)
            )
            self._raw[key] = cached
        return cached

    def _edge_score(self, edges, alpha, power, memo) -> float:
        denom = self.total + alpha * self.distinct
        score = 0.0
        for edge in edges:
            value = memo.get(edge)
            if value is None:
                value = ((self.counts.get(edge, 0) + alpha) / denom) ** power
                memo[edge] = value
            score += value
        return score / len(edges)

    def transformation(self, alpha, power) -> tuple[list[float], list[float]]:
        key = (alpha, power)
        cached = self._trans.get(key)
        if cached is None:
            memo: dict = {}
            cached = tuple(
                [
                    self._edge_score(self._edges(p.source, p.target), alpha, power, memo)
                    for p in part
                ]
                for part in (self.train, self.val)
            )
            self._trans[key] = cached
        return cached

    # ranking-objective caches: one row per validation query over the lexicon

    @property
    def queries(self):
        return [p for p in self.val if p.label]

    def raw_rows(self, mu, k1, b) -> list[list[float]]:
        key = (mu, k1, b)
        cached = self._raw_rows.get(key)
        if cached is None:
            params = self._params(mu, k1, b)
            cached = [
                [
                    sim(self._set(p.source), doc, self.lexicon_index, params)
                    for _, doc in self.lexicon_index.docs
                ]
                for p in self.queries
            ]
            self._raw_rows[key] = cached
        return cached

    def trans_rows(self, alpha, power) -> list[list[float]]:
        key = (alpha, power)
        cached = self._trans_rows.get(key)
        if cached is None:
            memo: dict = {}
            cached = [
                [
                    self._edge_score(self._edges(p.source, word), alpha, power, memo)
                    for word, _ in self.lexicon_index.docs
                ]
                for p in self.queries
            ]
            self._trans_rows[key] = cached
        return cached


def _blend(weight, norms, trans):
    if weight == 1.0:
        return list(norms)
    if weight == 0.0:
        return list(trans)
    return [weight * n + (1.0 - weight) * t for n, t in zip(norms, trans)]


def _combo_accuracy(cache: _FoldCache, combo: dict) -> float:
    weight = combo["sim_weight"]
    tr_raw, val_raw = cache.raw_sims(combo["mu"], combo["k1"], combo["b"])
    if weight > 0.0:
        lo, hi = min(tr_raw), max(tr_raw)
        if hi > lo:
            span = hi - lo
            tr_norm = [_clamp01((r - lo) / span) for r in tr_raw]
            val_norm = [_clamp01((r - lo) / span) for r in val_raw]
        else:
            # degenerate bounds: similarity carries no signal in this fold
            tr_norm = [0.5] * len(tr_raw)
            val_norm = [0.5] * len(val_raw)
    else:
        tr_norm = [0.0] * len(tr_raw)
        val_norm = [0.0] * len(val_raw)
    if cache.use_error_model and weight < 1.0:
        tr_trans, val_trans = cache.transformation(combo["alpha"], combo["power"])
    else:
        tr_trans = val_trans = [0.0] * max(len(tr_raw), len(val_raw))
    tr_scores = _blend(weight, tr_norm, tr_trans)
    val_scores = _blend(weight, val_norm, val_trans)
    threshold = learn_threshold(tr_scores, [p.label for p in cache.train])
    correct = sum(
        (score >= threshold) == pair.label
        for score, pair in zip(val_scores, cache.val)
    )
    return correct / len(cache.val)


def _combo_mrr(cache: _FoldCache, combo: dict, lex_words: list[str]) -> Optional[float]:
    queries = cache.queries
    if not queries:
        return None
    weight = combo["sim_weight"]
    raw_rows = cache.raw_rows(combo["mu"], combo["k1"], combo["b"])
    if cache.use_error_model and weight < 1.0:
        trans_rows = cache.trans_rows(combo["alpha"], combo["power"])
    else:
        trans_rows = [[0.0] * len(lex_words)] * len(queries)
    total = 0.0
    for pair, raw, trans in zip(queries, raw_rows, trans_rows):
        if weight > 0.0:
            lo, hi = min(raw), max(raw)
            if hi > lo:
                span = hi - lo
                norms = [(r - lo) / span for r in raw]
            else:
                norms = [0.5] * len(raw)
        else:
            norms = [0.0] * len(raw)
        scores = _blend(weight, norms, trans)
        total += 1.0 / target_rank(lex_words, scores, pair.target)
    return total / len(queries)


def tune(
    pairs: Sequence[LabeledPair],
    shingler_config: ShinglerConfig,
    ranker_function: str,
    use_error_model: bool = True,
    grids: Optional[dict] = None,
    folds: int = 5,
    seed: int = 42,
    objective: str = "accuracy",
    lexicon: Optional[Sequence[str]] = None,
) -> dict:
    """Cross-validated grid search; returns the winning hyperparameters.

    ``objective`` is ``accuracy`` (classification) or ``mrr`` (ranking).
    Ties go to the earliest combination in grid order.
    """
    if objective not in ("accuracy", "mrr"):
        raise ConfigError(f"unknown tuning objective {objective!r}")
    if not pairs:
        raise TrainingError("tuning requires training pairs")
    merged = _resolve_grids(grids, ranker_function, use_error_model)
    fold_groups = stratified_folds(pairs, folds, seed)
    if len(fold_groups) < 2:
        fold_groups = [list(pairs)]

    lexicon_index = None
    lex_words: list[str] = []
    if objective == "mrr":
        source_words = lexicon if lexicon is not None else [p.target for p in pairs]
        lex_words = list(dict.fromkeys(normalize_word(w) for w in source_words))
        lexicon_index = build_index(lex_words, shingler_config)

    caches = []
    for i, val in enumerate(fold_groups):
        if len(fold_groups) == 1:
            train = val
        else:
            train = [p for j, fold in enumerate(fold_groups) for p in fold if j != i]
        caches.append(
            _FoldCache(train, val, shingler_config, ranker_function, use_error_model, lexicon_index)
        )

    best_combo = None
    best_score = -math.inf
    for values in itertools.product(*(merged[key] for key in GRID_KEYS)):
        combo = dict(zip(GRID_KEYS, values))
        fold_scores = []
        for cache in caches:
            if objective == "accuracy":
                fold_scores.append(_combo_accuracy(cache, combo))
            else:
                score = _combo_mrr(cache, combo, lex_words)
                if score is not None:
                    fold_scores.append(score)
        if not fold_scores:
            raise TrainingError("no fold produced a tuning score (no positive pairs?)")
        mean_score = sum(fold_scores) / len(fold_scores)
        if mean_score > best_score:
            best_score = mean_score
            best_combo = combo
    resolved = dict(best_combo)
    resolved["cv_score"] = best_score
    resolved["objective"] = objective
    resolved["folds"] = len(fold_groups)
    return resolved


def resolve_hyperparameters(
    train_pairs: Sequence[LabeledPair],
    shingler_config: ShinglerConfig,
    ranker_function: str,
    use_error_model: bool = True,
    fixed: Optional[dict] = None,
    grids: Optional[dict] = None,
    folds: int = 5,
    seed: int = 42,
    objective: str = "accuracy",
) -> dict:
    """Pin any explicitly fixed values and tune whatever remains.

    When every grid collapses to a single value the cross-validation is
    skipped and the values are returned as-is.
    """
    search = {key: list(values) for key, values in (grids or {}).items()}
    for key, value in (fixed or {}).items():
        if key not in GRID_KEYS:
            raise ConfigError(f"unknown hyperparameter {key!r}")
        search[key] = [value]
    merged = _resolve_grids(search, ranker_function, use_error_model)
    if all(len(values) == 1 for values in merged.values()):
        resolved = {key: values[0] for key, values in merged.items()}
        resolved["objective"] = "fixed"
        return resolved
    return tune(
        train_pairs,
        shingler_config,
        ranker_function,
        use_error_model=use_error_model,
        grids=search,
        folds=folds,
        seed=seed,
        objective=objective,
    )


@dataclass
class EvalReport:
    """Results of one tuned experiment run."""

    label: str
    accuracy: float
    mrr: float
    per_query_ranks: list[int]
    hyperparameters: dict
    seed: int
    train_size: int
    test_size: int
    lexicon_size: int
    runtime_seconds: float = 0.0

    def to_dict(self) -> dict:
        # runtime stays out: persisted reports are byte-stable per seed
        return {
            "label": self.label,
            "accuracy": self.accuracy,
            "mrr": self.mrr,
            "per_query_ranks": list(self.per_query_ranks),
            "hyperparameters": dict(self.hyperparameters),
            "seed": self.seed,
            "train_size": self.train_size,
            "test_size": self.test_size,
            "lexicon_size": self.lexicon_size,
        }


def dataset_lexicon(
    pairs: Sequence[LabeledPair], extra: Optional[Sequence[str]] = None
) -> list[str]:
    """Deduplicated target-side words of the dataset, plus optional extras."""
    words = [p.target for p in pairs]
    if extra:
        words.extend(normalize_word(w) for w in extra)
    return list(dict.fromkeys(words))


def _system_from_resolved(
    shingler_config, ranker_function, resolved, use_error_model, threshold=None
) -> PipelineSystem:
    return PipelineSystem(
        shingler_config,
        RankerParams(ranker_function, k1=resolved["k1"], b=resolved["b"], mu=resolved["mu"]),
        sim_weight=resolved["sim_weight"],
        alpha=resolved["alpha"],
        power=resolved["power"],
        threshold=threshold,
        use_error_model=use_error_model,
    )


def run_experiment(
    pairs: Sequence[LabeledPair],
    shingler_config: ShinglerConfig,
    ranker_function: str,
    use_error_model: bool = True,
    seed: int = 42,
    grids: Optional[dict] = None,
    folds: int = 5,
    fixed: Optional[dict] = None,
    extra_lexicon: Optional[Sequence[str]] = None,
    label: str = "",
) -> EvalReport:
    """Split, tune, fit, and evaluate both experiments.

    Each experiment is tuned on its own metric: accuracy for
    classification, mean reciprocal rank for retrieval (a weight that is
    best for deciding cognate/non-cognate can be useless for ranking).
    ``fixed`` may pin any of sim_weight/power/alpha/mu/k1/b/threshold;
    pinned values become singleton grids, and tuning is skipped entirely
    when nothing is left to search.
    """
    started = time.perf_counter()
    train, test = split(pairs, seed)
    fixed = dict(fixed or {})
    threshold = fixed.pop("threshold", None)
    resolved_cls = resolve_hyperparameters(
        train,
        shingler_config,
        ranker_function,
        use_error_model=use_error_model,
        fixed=fixed,
        grids=grids,
        folds=folds,
        seed=seed,
        objective="accuracy",
    )
    system = _system_from_resolved(
        shingler_config, ranker_function, resolved_cls, use_error_model, threshold
    )
    system.fit(train)
    accuracy = eval_classification(system, test)

    if resolved_cls.get("objective") == "fixed":
        resolved_rank = resolved_cls
        rank_system = system
    else:
        resolved_rank = resolve_hyperparameters(
            train,
            shingler_config,
            ranker_function,
            use_error_model=use_error_model,
            fixed=fixed,
            grids=grids,
            folds=folds,
            seed=seed,
            objective="mrr",
        )
        rank_system = _system_from_resolved(
            shingler_config, ranker_function, resolved_rank, use_error_model
        )
        rank_system.fit(train)
    lexicon = dataset_lexicon(pairs, extra_lexicon)
    mrr, ranks = eval_mrr(rank_system, test, lexicon)

    def summarize(resolved):
        out = {key: resolved[key] for key in GRID_KEYS}
        for key in ("cv_score", "objective", "folds"):
            if key in resolved:
                out[key] = resolved[key]
        return out

    hyperparameters = {
        "function": ranker_function,
        "mode": shingler_config.mode,
        "gram_sizes": list(shingler_config.gram_sizes),
        "use_error_model": use_error_model,
        "threshold": system.scorer.config.threshold,
        "classification": summarize(resolved_cls),
        "ranking": summarize(resolved_rank),
    }
    if not label:
        ends = {"plain": "0-ended", "one_end": "1-ended", "two_end": "2-ended"}
        sizes = "+".join(str(k) for k in shingler_config.gram_sizes)
        label = f"{sizes}-gram {ends[shingler_config.mode]} {ranker_function}"
        if use_error_model:
            label += " + error model"
    return EvalReport(
        label=label,
        accuracy=accuracy,
        mrr=mrr,
        per_query_ranks=ranks,
        hyperparameters=hyperparameters,
        seed=seed,
        train_size=len(train),
        test_size=len(test),
        lexicon_size=len(lexicon),
        runtime_seconds=time.perf_counter() - started,
    )


def run_baseline_experiment(
    pairs: Sequence[LabeledPair],
    method: str,
    seed: int = 42,
    extra_lexicon: Optional[Sequence[str]] = None,
) -> EvalReport:
    """Split, fit the baseline threshold on train, and evaluate on test."""
    started = time.perf_counter()
    train, test = split(pairs, seed)
    system = BaselineSystem(method)
    system.fit(train)
    accuracy = eval_classification(system, test)
    lexicon = dataset_lexicon(pairs, extra_lexicon)
    mrr, ranks = eval_mrr(system, test, lexicon)
    return EvalReport(
        label=method,
        accuracy=accuracy,
        mrr=mrr,
        per_query_ranks=ranks,
        hyperparameters={"method": method, "threshold": system.threshold},
        seed=seed,
        train_size=len(train),
        test_size=len(test),
        lexicon_size=len(lexicon),
        runtime_seconds=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class AblationCell:
    """One configuration of the ablation grid."""

    mode: str
    gram_sizes: tuple[int, ...]
    function: str
    use_error_model: bool


DEFAULT_ABLATION_CELLS = (
    AblationCell("plain", (2,), "tfidf", False),
    AblationCell("one_end", (2,), "tfidf", False),
    AblationCell("two_end", (2,), "tfidf", False),
    AblationCell("two_end", (2, 3), "tfidf", False),
    AblationCell("two_end", (2,), "bm25", False),
    AblationCell("two_end", (2,), "dirichlet", False),
    AblationCell("two_end", (2,), "bm25", True),
    AblationCell("two_end", (2,), "dirichlet", True),
)


def ablation(
    pairs: Sequence[LabeledPair],
    cells: Sequence[AblationCell] = DEFAULT_ABLATION_CELLS,
    seed: int = 42,
    grids: Optional[dict] = None,
    folds: int = 5,
    extra_lexicon: Optional[Sequence[str]] = None,
) -> list[EvalReport]:
    """One tuned run per grid cell."""
    if not cells:
        raise ConfigError("ablation grid is empty")
    reports = []
    for cell in cells:
        reports.append(
            run_experiment(
                pairs,
                ShinglerConfig(cell.gram_sizes, cell.mode),
                cell.function,
                use_error_model=cell.use_error_model,
                seed=seed,
                grids=grids,
                folds=folds,
                extra_lexicon=extra_lexicon,
            )
        )
    return reports


def format_report_table(reports: Sequence[EvalReport]) -> str:
    """Aligned plain-text table of accuracy and MRR per configuration."""
    rows = [("configuration", "acc", "mrr", "train", "test")]
    for report in reports:
        rows.append(
            (
                report.label,
                f"{report.accuracy:.2f}",
                f"{report.mrr:.2f}",
                str(report.train_size),
                str(report.test_size),
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines)
