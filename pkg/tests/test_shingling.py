"""Shingling: golden split sets, normalization rules, and set invariants."""

import math
import random

import pytest

from cognatekit import (
    ConfigError,
    InvalidWordError,
    Shingle,
    ShinglerConfig,
    intersect,
    normalize_word,
    shingle,
    shingle_one_end,
    shingle_plain,
    shingle_two_end,
)

from conftest import random_word


def brute_force_plain_grams(word, k):
    """Independent padder: slide over '<' * (k-1) + word + '>' * (k-1)."""
    padded = "<" * (k - 1) + word + ">" * (k - 1)
    grams = []
    for i in range(len(padded) - k + 1):
        gram = padded[i : i + k].replace("<", "").replace(">", "")
        if gram:
            grams.append(gram)
    out = []
    for gram in grams:
        if gram not in out:
            out.append(gram)
    return out


class TestNormalizeWord:
    def test_lowercases(self):
        assert normalize_word("RosMarin") == "rosmarin"

    def test_keeps_diacritics(self):
        assert normalize_word("Șarpe") == "șarpe"

    def test_rejects_empty(self):
        with pytest.raises(InvalidWordError):
            normalize_word("")

    def test_rejects_whitespace(self):
        with pytest.raises(InvalidWordError):
            normalize_word("two words")

    def test_rejects_digits(self):
        with pytest.raises(InvalidWordError):
            normalize_word("ro1marin")

    def test_rejects_sentinel_character(self):
        with pytest.raises(InvalidWordError):
            normalize_word("a\x00b")


class TestPlain:
    def test_rosmarin_bigrams(self):
        assert shingle_plain("rosmarin", 2).tokens == (
            "r", "ro", "os", "sm", "ma", "ar", "ri", "in", "n",
        )

    def test_single_letter_collapses(self):
        assert shingle_plain("a", 2).tokens == ("a",)

    def test_noche_trigrams(self):
        assert shingle_plain("noche", 3).tokens == (
            "n", "no", "noc", "och", "che", "he", "e",
        )

    def test_matches_brute_force_padder(self):
        rng = random.Random(101)
        for _ in range(300):
            word = random_word(rng)
            k = rng.randint(2, 4)
            assert list(shingle_plain(word, k).tokens) == brute_force_plain_grams(word, k)

    def test_bigram_count_is_length_plus_one_before_dedup(self):
        # distinct-gram words show the raw count directly
        assert len(shingle_plain("rosmarin", 2)) == len("rosmarin") + 1

    def test_rejects_gram_size_below_two(self):
        with pytest.raises(ConfigError):
            shingle_plain("rosmarin", 1)


class TestOneEnd:
    def test_rosmarin(self):
        assert shingle_one_end("rosmarin", 2).tokens == (
            "1r", "2ro", "3os", "4sm", "5ma", "6ar", "7ri", "8in", "9n",
        )

    def test_romarin(self):
        assert shingle_one_end("romarin", 2).tokens == (
            "1r", "2ro", "3om", "4ma", "5ar", "6ri", "7in", "8n",
        )

    def test_single_gram_gets_position_one(self):
        assert shingle_one_end("a", 2).tokens == ("1a",)


class TestTwoEnd:
    def test_romarin(self):
        assert shingle_two_end("romarin", 2).tokens == (
            "1r", "2ro", "3om", "4ma", "ar4", "ri3", "in2", "n1",
        )

    def test_rosmarin_middle_gram_takes_left_position(self):
        assert shingle_two_end("rosmarin", 2).tokens == (
            "1r", "2ro", "3os", "4sm", "5ma", "ar4", "ri3", "in2", "n1",
        )

    def test_single_gram(self):
        assert shingle_two_end("a", 2).tokens == ("1a",)

    def test_anchor_balance(self):
        rng = random.Random(202)
        for _ in range(300):
            word = random_word(rng)
            result = shingle_two_end(word, 2)
            m = len(result)
            lefts = sum(s.anchor == "left" for s in result)
            rights = sum(s.anchor == "right" for s in result)
            assert lefts == math.ceil(m / 2)
            assert rights == m // 2

    def test_position_bounds(self):
        rng = random.Random(203)
        for _ in range(300):
            word = random_word(rng)
            two = shingle_two_end(word, 2)
            m = len(two)
            assert all(1 <= s.position <= math.ceil(m / 2) for s in two)
            one = shingle_one_end(word, 2)
            assert all(1 <= s.position <= len(one) for s in one)


class TestDispatch:
    def test_two_end_pair_of_letters(self):
        result = shingle("ab", ShinglerConfig((2,), "two_end"))
        assert result.tokens == ("1a", "2ab", "b1")

    def test_plain_dispatch_matches_variant(self):
        config = ShinglerConfig((2,), "plain")
        assert shingle("rosmarin", config).tokens == shingle_plain("rosmarin", 2).tokens

    def test_multi_size_union_is_superset(self):
        config = ShinglerConfig((2, 3), "two_end")
        merged = shingle("rosmarin", config)
        bigram_only = set(shingle_two_end("rosmarin", 2).tokens)
        assert bigram_only <= set(merged.tokens)

    def test_multi_size_union_matches_brute_force(self):
        rng = random.Random(303)
        config = ShinglerConfig((2, 3), "two_end")
        for _ in range(200):
            word = random_word(rng)
            merged = shingle(word, config)
            expected = []
            for k in (2, 3):
                for token in shingle_two_end(word, k).tokens:
                    if token not in expected:
                        expected.append(token)
            assert list(merged.tokens) == expected

    def test_normalizes_input(self):
        config = ShinglerConfig((2,), "plain")
        assert shingle("ROSMARIN", config) == shingle("rosmarin", config)


class TestIntersect:
    def test_two_end_overlap(self):
        a = shingle_two_end("rosmarin", 2)
        b = shingle_two_end("romarin", 2)
        assert intersect(a, b).tokens == ("1r", "2ro", "ar4", "ri3", "in2", "n1")

    def test_one_end_overlap_is_smaller(self):
        a = shingle_one_end("rosmarin", 2)
        b = shingle_one_end("romarin", 2)
        assert intersect(a, b).tokens == ("1r", "2ro")

    def test_idempotent(self):
        x = shingle_two_end("noche", 2)
        assert intersect(x, x) == x

    def test_mismatched_configs_rejected(self):
        with pytest.raises(ConfigError):
            intersect(shingle_plain("noche", 2), shingle_two_end("noche", 2))

    def test_two_end_at_least_as_robust_on_shifted_pair(self):
        two = len(intersect(shingle_two_end("rosmarin", 2), shingle_two_end("romarin", 2)))
        one = len(intersect(shingle_one_end("rosmarin", 2), shingle_one_end("romarin", 2)))
        assert two >= one


class TestInvariants:
    def test_position_strip_recovers_plain(self):
        rng = random.Random(404)
        for _ in range(500):
            word = random_word(rng)
            k = rng.randint(2, 3)
            plain = list(shingle_plain(word, k).tokens)
            for variant in (shingle_one_end, shingle_two_end):
                grams = [s.gram for s in variant(word, k)]
                deduped = list(dict.fromkeys(grams))
                assert deduped == plain

    def test_determinism(self):
        config = ShinglerConfig((2, 3), "two_end")
        rng = random.Random(505)
        for _ in range(100):
            word = random_word(rng)
            assert shingle(word, config).tokens == shingle(word, config).tokens


class TestTypes:
    def test_tokens_are_unique(self):
        rng = random.Random(606)
        for _ in range(200):
            word = random_word(rng)
            result = shingle(word, ShinglerConfig((2,), "two_end"))
            assert len(set(result.tokens)) == len(result.tokens)

    def test_shingle_token_encoding(self):
        assert Shingle("ro", "left", 2).token == "2ro"
        assert Shingle("ar", "right", 4).token == "ar4"
        assert Shingle("ro").token == "ro"

    def test_shingle_validation(self):
        with pytest.raises(ConfigError):
            Shingle("ro", "none", 1)
        with pytest.raises(ConfigError):
            Shingle("ro", "left", None)
        with pytest.raises(ConfigError):
            Shingle("ro", "left", 0)

    def test_config_sorts_and_dedups_sizes(self):
        assert ShinglerConfig((3, 2, 2), "plain").gram_sizes == (2, 3)

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            ShinglerConfig((), "plain")
        with pytest.raises(ConfigError):
            ShinglerConfig((1,), "plain")
        with pytest.raises(ConfigError):
            ShinglerConfig((2,), "sideways")
