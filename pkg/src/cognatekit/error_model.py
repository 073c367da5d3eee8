"""Bipartite transformation graphs and the trained edge-frequency model.

For a word pair the tokens left over after removing the shared shingles
form two ordered sides, ``top`` (source) and ``bottom`` (target).  Empty
sides receive a placeholder token, the shorter side is padded with
placeholders inserted into its middle until the sides match, and every
top token is connected to every bottom token.  An edge such as
``(None, '4ss')`` reads "insert ss at position 4 of the source word".

Edge frequencies counted over known cognate pairs, with additive
smoothing, estimate how probable each transformation is; the mean of
the smoothed edge probabilities (raised to a strength exponent) scores
how plausibly one word transforms into the other.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ConfigError, DataError, TrainingError
from .shingling import ShinglerConfig, ShingleSet, shingle

# Placeholder for an absent token; edges from/to it model pure
# insertions and deletions.  An edge is a (top token, bottom token)
# pair where either side may be the placeholder.
EMPTY_TOKEN: Optional[str] = None


def format_token(token: Optional[str]) -> str:
    return "∅" if token is None else token


@dataclass(frozen=True)
class ErrorGraph:
    """Complete directed bipartite graph for one word pair."""

    top: tuple
    bottom: tuple
    edges: tuple

    def __repr__(self) -> str:
        shown = ", ".join(f"{format_token(u)}→{format_token(v)}" for u, v in self.edges)
        return f"ErrorGraph({shown})"


def build_graph(s: ShingleSet, t: ShingleSet) -> ErrorGraph:
    """Construct the transformation graph between two shingle sets.

    Both sets must come from the same shingler configuration.  The
    returned graph always has at least one edge: identical words reduce
    to a single placeholder-to-placeholder edge.
    """
    if s.config != t.config:
        raise ConfigError(
            f"shingle sets built with different configs: {s.config} vs {t.config}"
        )
    common = s.token_set & t.token_set
    top: list = [tok for tok in s.tokens if tok not in common]
    bottom: list = [tok for tok in t.tokens if tok not in common]
    if not top:
        top.append(EMPTY_TOKEN)
    if not bottom:
        bottom.append(EMPTY_TOKEN)
    while len(top) < len(bottom):
        top.insert(len(top) // 2, EMPTY_TOKEN)
    while len(bottom) < len(top):
        bottom.insert(len(bottom) // 2, EMPTY_TOKEN)
    edges = tuple((u, v) for u in top for v in bottom)
    return ErrorGraph(tuple(top), tuple(bottom), edges)


def _encode_edge(edge) -> str:
    u, v = edge
    return f"{u or ''}\t{v or ''}"


def _decode_edge(text: str):
    u, _, v = text.partition("\t")
    return (u or None, v or None)


@dataclass(frozen=True)
class ErrorModel:
    """Edge-frequency table with additive smoothing.

    ``distinct_edges`` counts the observed distinct edges plus one
    aggregate class for everything unseen, so unseen edges receive the
    smoothing floor without enumerating the edge universe.  ``power``
    is the strength exponent applied to each edge probability before
    averaging.
    """

    config: ShinglerConfig
    edge_counts: Mapping
    total_count: int
    distinct_edges: int
    alpha: float = 1.0
    power: float = 1.0

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ConfigError(f"smoothing pseudo-count must be > 0, got {self.alpha}")
        if self.power <= 0:
            raise ConfigError(f"strength exponent must be > 0, got {self.power}")
        if self.total_count != sum(self.edge_counts.values()):
            raise ConfigError("total_count does not match the edge counts")
        if self.distinct_edges < len(self.edge_counts) + 1:
            raise ConfigError("distinct_edges must cover observed edges plus the unseen class")

    def edge_prob(self, edge) -> float:
        """Smoothed probability of one edge, strictly inside (0, 1)."""
        count = self.edge_counts.get(edge, 0)
        return (count + self.alpha) / (self.total_count + self.alpha * self.distinct_edges)

    def transformation_score(self, s: ShingleSet, t: ShingleSet) -> float:
        """Mean of smoothed edge probabilities (each raised to ``power``)."""
        if s.config != self.config or t.config != self.config:
            raise ConfigError("shingle sets do not match the model's shingler config")
        graph = build_graph(s, t)
        total = sum(self.edge_prob(edge) ** self.power for edge in graph.edges)
        return total / len(graph.edges)

    def score_words(self, source: str, target: str) -> float:
        return self.transformation_score(
            shingle(source, self.config), shingle(target, self.config)
        )

    def to_dict(self) -> dict:
        """JSON-ready representation; lossless round-trip via :func:`model_from_dict`."""
        return {
            "edge_counts": {
                _encode_edge(edge): count
                for edge, count in sorted(
                    self.edge_counts.items(), key=lambda item: _encode_edge(item[0])
                )
            },
            "total_count": self.total_count,
            "distinct_edges": self.distinct_edges,
            "alpha": self.alpha,
            "q": self.power,
            "shingler_config": {
                "gram_sizes": list(self.config.gram_sizes),
                "mode": self.config.mode,
            },
        }


def model_from_dict(payload: dict) -> ErrorModel:
    """Rebuild an :class:`ErrorModel` from its JSON representation."""
    try:
        config = ShinglerConfig(
            tuple(payload["shingler_config"]["gram_sizes"]),
            payload["shingler_config"]["mode"],
        )
        counts = {
            _decode_edge(key): int(count)
            for key, count in payload["edge_counts"].items()
        }
        return ErrorModel(
            config=config,
            edge_counts=counts,
            total_count=int(payload["total_count"]),
            distinct_edges=int(payload["distinct_edges"]),
            alpha=float(payload["alpha"]),
            power=float(payload["q"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed error-model document: {exc}") from exc


def train_error_model(
    pairs: Sequence,
    config: ShinglerConfig,
    alpha: float = 1.0,
    power: float = 1.0,
) -> ErrorModel:
    """Count graph edges over cognate (source, target) word pairs.

    Only known-positive pairs belong here; the counts are insensitive to
    pair order.
    """
    if not pairs:
        raise TrainingError("training requires at least one cognate pair")
    counts: Counter = Counter()
    for source, target in pairs:
        graph = build_graph(shingle(source, config), shingle(target, config))
        counts.update(graph.edges)
    return ErrorModel(
        config=config,
        edge_counts=dict(counts),
        total_count=sum(counts.values()),
        distinct_edges=len(counts) + 1,
        alpha=alpha,
        power=power,
    )


def edge_counts_to_model(
    config: ShinglerConfig,
    counts: Mapping,
    alpha: float,
    power: float,
) -> ErrorModel:
    """Wrap precomputed edge counts in a model (used by tuning to share counts)."""
    if not counts:
        raise TrainingError("training requires at least one cognate pair")
    return ErrorModel(
        config=config,
        edge_counts=dict(counts),
        total_count=sum(counts.values()),
        distinct_edges=len(counts) + 1,
        alpha=alpha,
        power=power,
    )


def pair_edges(source: str, target: str, config: ShinglerConfig) -> tuple:
    """Edges of one pair's graph; convenience for count caching."""
    return build_graph(shingle(source, config), shingle(target, config)).edges
