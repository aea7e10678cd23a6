"""Unit tests for LR-words and the wedge bijection."""

import itertools

import pytest

from uniwilf.classes import enumerate_av
from uniwilf.errors import DomainError
from uniwilf.perms import Permutation, contains, parse_permutation, parse_permutation_list
from uniwilf.wedge import (
    LRWord,
    decode_word,
    encode_wedge,
    minimal_prefix,
    wedge_bijection,
    word_contains,
)

P = parse_permutation
W = LRWord

# word length for the exhaustive bijection check
CHECK_MAX_LENGTH = 12


def words(length):
    return [W("".join(letters)) for letters in itertools.product("LR", repeat=length)]


def check_bijection(alpha, beta, max_length):
    for m in range(max_length + 1):
        domain = [w for w in words(m) if word_contains(w, alpha)]
        image = [wedge_bijection(alpha, beta, w) for w in domain]
        assert all(len(v) == m for v in image)
        assert len(set(image)) == len(image)
        assert set(image) == {w for w in words(m) if word_contains(w, beta)}


@pytest.fixture(scope="module")
def wedges():
    return enumerate_av(parse_permutation_list("213,312"), 8)


class TestEncoding:
    """Tests for encode_wedge and decode_word."""

    def test_examples(self):
        """132 reads LR, 231 reads RL, the identity reads all L."""
        assert str(encode_wedge(P("132"))) == "LR"
        assert str(encode_wedge(P("231"))) == "RL"
        assert str(encode_wedge(Permutation.identity(5))) == "LLLL"

    def test_decode_examples(self):
        """RL gives 231, the empty word gives 1, RR gives 321."""
        assert decode_word(W("RL")) == P("231")
        assert decode_word(W("")) == P("1")
        assert decode_word(W("RR")) == P("321")

    def test_rejects_non_wedge(self):
        """213 is not a wedge permutation."""
        with pytest.raises(DomainError):
            encode_wedge(P("213"))

    def test_rejects_bad_letters(self):
        """Words use only L and R."""
        with pytest.raises(DomainError):
            W("LX")

    def test_round_trips(self, wedges):
        """Decoding inverts encoding on Av(213,312) up to 8 and on words up to 7."""
        for sigma in wedges.members():
            assert decode_word(encode_wedge(sigma)) == sigma
        for m in range(8):
            for w in words(m):
                assert encode_wedge(decode_word(w)) == w

    def test_containment_is_subsequence(self, wedges):
        """Pattern containment matches subsequence containment of words up to size 6."""
        members = [p for p in wedges.members() if p.size <= 6]
        for sigma in members:
            for pi in members:
                assert contains(sigma, pi) == word_contains(encode_wedge(sigma), encode_wedge(pi))

    @pytest.mark.slow
    def test_containment_is_subsequence_to_seven(self, wedges):
        """The same check up to size 7."""
        members = [p for p in wedges.members() if p.size <= 7]
        for sigma in members:
            for pi in members:
                assert contains(sigma, pi) == word_contains(encode_wedge(sigma), encode_wedge(pi))


class TestWords:
    """Tests for subsequence containment and minimal prefixes."""

    def test_word_contains(self):
        """Subsequences need not be contiguous; the empty word is everywhere."""
        assert word_contains(W("LR"), W("R"))
        assert word_contains(W("RLLR"), W("RR"))
        assert word_contains(W("LL"), W(""))
        assert not word_contains(W("RL"), W("LR"))

    @pytest.mark.parametrize(
        "word, sub, expected",
        [("RRL", "L", 3), ("LRL", "RL", 3), ("LLL", "R", None), ("LR", "", 0)],
    )
    def test_minimal_prefix(self, word, sub, expected):
        """Greedy leftmost matching."""
        assert minimal_prefix(W(word), W(sub)) == expected


class TestBijection:
    """Tests for wedge_bijection."""

    def test_examples(self):
        """RRL maps to LLR and RLRL to LRRL."""
        assert wedge_bijection(W("L"), W("R"), W("RRL")) == W("LLR")
        assert wedge_bijection(W("L"), W("R"), W("RLRL")) == W("LRRL")

    def test_identity_when_words_agree(self):
        """Mapping alpha to itself changes nothing."""
        for length in range(4):
            for alpha in words(length):
                for m in range(length, 9):
                    for w in words(m):
                        if word_contains(w, alpha):
                            assert wedge_bijection(alpha, alpha, w) == w

    def test_bijective_small(self):
        """A length-preserving bijection for |alpha| = |beta| <= 2 and words up to 8."""
        for length in range(3):
            for alpha, beta in itertools.product(words(length), repeat=2):
                check_bijection(alpha, beta, 8)

    @pytest.mark.slow
    def test_bijective(self):
        """The full check for |alpha| = |beta| <= 4 and words up to CHECK_MAX_LENGTH."""
        for length in range(5):
            for alpha, beta in itertools.product(words(length), repeat=2):
                check_bijection(alpha, beta, CHECK_MAX_LENGTH)

    def test_preconditions(self):
        """Lengths must match and the word must contain alpha."""
        with pytest.raises(DomainError):
            wedge_bijection(W("L"), W("RR"), W("LRR"))
        with pytest.raises(DomainError):
            wedge_bijection(W("R"), W("L"), W("LLL"))


class TestCorollary:
    """The wedge class counted through words."""

    def test_words_count_involvers(self):
        """Words of length m containing a word u number the same for every u of a given length."""
        for k in range(4):
            for m in range(k, 8):
                counts = {sum(word_contains(w, u) for w in words(m)) for u in words(k)}
                assert len(counts) == 1
