"""Positional character shingling.

A word is broken into overlapping character k-grams ("shingles").  Three
variants are supported:

* ``plain``    -- bare grams, no position information.
* ``one_end``  -- every gram carries its 1-based index counted from the
  start of the gram sequence, attached on the left ("2ro").
* ``two_end``  -- every gram carries the smaller of its index from the
  start and its index from the end; the number is attached on the left
  when counting from the start wins (or ties) and on the right when
  counting from the end wins ("ar4").

Grams are produced by padding the word with k-1 sentinel characters on
each side, sliding a window of width k, and stripping the sentinels from
each emitted gram.  With k = 2 the word ``rosmarin`` therefore yields
``r, ro, os, sm, ma, ar, ri, in, n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ConfigError, InvalidWordError

# Internal padding character; never appears in canonical tokens and is
# rejected in input words.
_SENTINEL = "\x00"

MODES = ("plain", "one_end", "two_end")
ANCHORS = ("none", "left", "right")


def normalize_word(text: str) -> str:
    """Lowercase ``text`` and validate it as shingling input.

    Words must be non-empty and may not contain whitespace, decimal
    digits (reserved for position markers in canonical tokens), or the
    internal padding character.  Raises :class:`InvalidWordError`.
    """
    word = text.lower()
    if not word:
        raise InvalidWordError("word is empty")
    for ch in word:
        if ch.isspace():
            raise InvalidWordError(f"word {text!r} contains whitespace")
        if ch.isdigit():
            raise InvalidWordError(
                f"word {text!r} contains a digit; digits are reserved for position markers"
            )
        if ch == _SENTINEL:
            raise InvalidWordError(f"word {text!r} contains a reserved control character")
    return word


@dataclass(frozen=True)
class Shingle:
    """One gram with an optional positional anchor.

    The canonical token prepends the position for a left anchor ("2ro"),
    appends it for a right anchor ("ar4"), and is the bare gram when
    unanchored.
    """

    gram: str
    anchor: str = "none"
    position: int | None = None

    def __post_init__(self) -> None:
        if self.anchor not in ANCHORS:
            raise ConfigError(f"unknown anchor {self.anchor!r}")
        if self.anchor == "none":
            if self.position is not None:
                raise ConfigError("unanchored shingles carry no position")
        elif self.position is None or self.position < 1:
            raise ConfigError("anchored shingles need a position >= 1")
        if not self.gram:
            raise ConfigError("gram must be non-empty")

    @property
    def token(self) -> str:
        if self.anchor == "left":
            return f"{self.position}{self.gram}"
        if self.anchor == "right":
            return f"{self.gram}{self.position}"
        return self.gram


@dataclass(frozen=True)
class ShinglerConfig:
    """Gram sizes plus splitting mode; the unit of compatibility between sets."""

    gram_sizes: tuple[int, ...] = (2,)
    mode: str = "two_end"

    def __post_init__(self) -> None:
        sizes = tuple(sorted(set(self.gram_sizes)))
        if not sizes:
            raise ConfigError("at least one gram size is required")
        for k in sizes:
            if not isinstance(k, int) or k < 2:
                raise ConfigError(f"gram size must be an integer >= 2, got {k!r}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown shingling mode {self.mode!r}; expected one of {MODES}")
        object.__setattr__(self, "gram_sizes", sizes)


class ShingleSet:
    """Ordered, duplicate-free collection of shingles from one word.

    Membership and equality are decided by canonical token; the first
    occurrence of a token wins and generation order is preserved.
    """

    __slots__ = ("members", "tokens", "token_set", "source_word", "config")

    def __init__(self, members: Iterable[Shingle], source_word: str, config: ShinglerConfig):
        unique: dict[str, Shingle] = {}
        for member in members:
            unique.setdefault(member.token, member)
        self.members: tuple[Shingle, ...] = tuple(unique.values())
        self.tokens: tuple[str, ...] = tuple(unique.keys())
        self.token_set: frozenset[str] = frozenset(unique.keys())
        self.source_word = source_word
        self.config = config

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Shingle]:
        return iter(self.members)

    def __contains__(self, token: str) -> bool:
        return token in self.token_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShingleSet):
            return NotImplemented
        return (
            self.tokens == other.tokens
            and self.source_word == other.source_word
            and self.config == other.config
        )

    def __hash__(self) -> int:
        return hash((self.tokens, self.source_word, self.config))

    def __repr__(self) -> str:
        return f"ShingleSet({self.source_word!r}, {{{', '.join(self.tokens)}}})"


def _check_gram_size(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ConfigError(f"gram size must be an integer >= 2, got {k!r}")


def _grams(word: str, k: int) -> list[str]:
    """Unique sentinel-stripped k-grams of ``word`` in emission order."""
    padded = _SENTINEL * (k - 1) + word + _SENTINEL * (k - 1)
    grams = []
    for i in range(len(padded) - k + 1):
        gram = padded[i : i + k].replace(_SENTINEL, "")
        if gram:
            grams.append(gram)
    return list(dict.fromkeys(grams))


def shingle_plain(word: str, k: int) -> ShingleSet:
    """Split ``word`` into unanchored k-grams."""
    _check_gram_size(k)
    word = normalize_word(word)
    members = [Shingle(g) for g in _grams(word, k)]
    return ShingleSet(members, word, ShinglerConfig((k,), "plain"))


def shingle_one_end(word: str, k: int) -> ShingleSet:
    """Split ``word`` into k-grams numbered from the start of the sequence."""
    _check_gram_size(k)
    word = normalize_word(word)
    members = [Shingle(g, "left", i) for i, g in enumerate(_grams(word, k), 1)]
    return ShingleSet(members, word, ShinglerConfig((k,), "one_end"))


def shingle_two_end(word: str, k: int) -> ShingleSet:
    """Split ``word`` into k-grams numbered from the nearer of both ends.

    For gram i of m the mirrored index is j = m - i + 1.  The smaller of
    the two is kept: a left anchor for i < j, a right anchor for i > j,
    and the left one by convention when they tie.
    """
    _check_gram_size(k)
    word = normalize_word(word)
    grams = _grams(word, k)
    m = len(grams)
    members = []
    for i, gram in enumerate(grams, 1):
        j = m - i + 1
        if i <= j:
            members.append(Shingle(gram, "left", i))
        else:
            members.append(Shingle(gram, "right", j))
    return ShingleSet(members, word, ShinglerConfig((k,), "two_end"))


_VARIANTS = {
    "plain": shingle_plain,
    "one_end": shingle_one_end,
    "two_end": shingle_two_end,
}


def shingle(word: str, config: ShinglerConfig) -> ShingleSet:
    """Apply the configured mode for every gram size and union the results.

    Smaller gram sizes come first; duplicate tokens collapse onto their
    first occurrence.
    """
    word = normalize_word(word)
    variant = _VARIANTS[config.mode]
    members: list[Shingle] = []
    for k in config.gram_sizes:
        members.extend(variant(word, k).members)
    return ShingleSet(members, word, config)


def intersect(a: ShingleSet, b: ShingleSet) -> ShingleSet:
    """Token intersection of two sets, preserving ``a``'s order."""
    if a.config != b.config:
        raise ConfigError(
            f"cannot intersect shingle sets built with different configs: "
            f"{a.config} vs {b.config}"
        )
    return ShingleSet(
        [m for m in a.members if m.token in b.token_set], a.source_word, a.config
    )
