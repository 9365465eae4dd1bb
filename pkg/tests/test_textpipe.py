import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hotelrec.textpipe import (
    TAG_SET,
    FrequencyLexicon,
    StopwordList,
    Token,
    correct_spelling,
    default_stopwords,
    default_tag_lexicon,
    edits1,
    pos_tag,
    remove_stopwords,
    shorten_exaggeration,
    split_sentences,
    stem,
    tokenize,
)

LEXICON = FrequencyLexicon(
    {"location": 10, "local": 3, "hotel": 8, "cool": 5, "no": 7, "room": 9}
)


class TestSplitSentences:
    def test_two_sentences(self):
        assert split_sentences("Rooms are big. Food is delicious.") == [
            "Rooms are big.",
            "Food is delicious.",
        ]

    def test_empty(self):
        assert split_sentences("") == []

    def test_duplicate_punctuation_collapsed(self):
        assert split_sentences("Great!!! Loved it??") == ["Great!", "Loved it?"]

    def test_no_terminal_punctuation(self):
        assert split_sentences("There is no internet") == ["There is no internet"]


class TestTokenize:
    def test_simple(self):
        assert [t.surface for t in tokenize("Rooms of the hotel")] == [
            "Rooms",
            "of",
            "the",
            "hotel",
        ]

    def test_empty(self):
        assert tokenize("") == []

    def test_punctuation_split(self):
        assert [t.surface for t in tokenize("no internet.")] == ["no", "internet", "."]

    def test_positions_strictly_increasing(self):
        tokens = tokenize("The staff, however, were great!")
        assert [t.position for t in tokens] == list(range(len(tokens)))
        assert all(" " not in t.surface and t.surface for t in tokens)


class TestShortenExaggeration:
    def test_all_caps_exaggeration(self):
        assert shorten_exaggeration("NOOOOOO", LEXICON) == "NO"

    def test_in_lexicon_untouched(self):
        assert shorten_exaggeration("cool", LEXICON) == "cool"

    def test_collapse(self):
        assert shorten_exaggeration("sooooo", LEXICON) == "so"

    @given(st.text(alphabet=string.ascii_letters, min_size=1, max_size=12))
    def test_idempotent(self, word):
        once = shorten_exaggeration(word, LEXICON)
        assert shorten_exaggeration(once, LEXICON) == once


class TestCorrectSpelling:
    def test_in_lexicon(self):
        assert correct_spelling("hotel", LEXICON) == "hotel"

    def test_single_deletion(self):
        assert correct_spelling("locaton", LEXICON) == "location"

    def test_no_candidate_unchanged(self):
        assert correct_spelling("xqzvvv", LEXICON) == "xqzvvv"

    def test_returns_input_or_lexicon_member(self):
        for word in ["rooom", "hottel", "kool", "zzzzzz", "location"]:
            out = correct_spelling(word, LEXICON)
            assert out == word or out in LEXICON

    @given(st.text(alphabet="locatin", min_size=1, max_size=8))
    @settings(max_examples=50, deadline=None)
    def test_argmax_matches_exhaustive_enumeration(self, word):
        """Brute-force oracle: enumerate all candidates at distance 1 then 2."""
        out = correct_spelling(word, LEXICON)
        if word.lower() in LEXICON:
            assert out == word
            return
        d1 = sorted(w for w in edits1(word.lower()) if w in LEXICON)
        d2 = sorted(
            {e2 for e1 in edits1(word.lower()) for e2 in edits1(e1) if e2 in LEXICON}
        )
        candidates = d1 or d2
        if not candidates:
            assert out == word
        else:
            best = max(LEXICON.frequency(w) for w in candidates)
            ties = [w for w in candidates if LEXICON.frequency(w) == best]
            assert out == min(ties)


class TestRemoveStopwords:
    def test_default_list(self):
        stops = default_stopwords()
        tokens = tokenize("the room is big")
        assert [t.surface for t in remove_stopwords(tokens, stops)] == ["room", "big"]

    def test_negator_preserved(self):
        stops = default_stopwords()
        tokens = tokenize("no internet")
        assert [t.surface for t in remove_stopwords(tokens, stops)] == ["no", "internet"]

    def test_empty(self):
        assert remove_stopwords([], default_stopwords()) == []

    def test_output_is_subsequence(self):
        stops = default_stopwords()
        tokens = tokenize("there is no internet in the room at all")
        kept = remove_stopwords(tokens, stops)
        it = iter(tokens)
        assert all(any(t == k for t in it) for k in kept)

    def test_negators_disjoint_from_removable(self):
        stops = StopwordList(["the", "no", "not", "a"])
        assert not (stops.words & stops.preserved_negators)


class TestStem:
    @pytest.mark.parametrize(
        "word,expected",
        [("vegetables", "vegetable"), ("feels", "feel"), ("room", "room"),
         ("rooms", "room"), ("walking", "walk"), ("walked", "walk")],
    )
    def test_examples(self, word, expected):
        assert stem(word) == expected

    def test_minimum_stem_length(self):
        assert stem("is") == "is"
        assert stem("was") == "was"

    @given(st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=14))
    def test_idempotent(self, word):
        assert stem(stem(word)) == stem(word)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            stem("")


class TestPosTag:
    def test_table1_sentence(self):
        lexicon = default_tag_lexicon()
        tokens = tokenize("Rooms of the hotel are big.")
        tags = [(t.token.surface, t.tag) for t in pos_tag(tokens, lexicon)]
        assert tags == [
            ("Rooms", "NNS"),
            ("of", "IN"),
            ("the", "DT"),
            ("hotel", "NN"),
            ("are", "VBZ"),
            ("big", "JJ"),
            (".", "OTHER"),
        ]

    def test_adjective_lookup(self):
        (tagged,) = pos_tag([Token("delicious", 0)], default_tag_lexicon())
        assert tagged.tag == "JJ"

    def test_unknown_fallback_nn(self):
        (tagged,) = pos_tag([Token("zzgrf", 0)], default_tag_lexicon())
        assert tagged.tag == "NN"

    def test_suffix_heuristics(self):
        lexicon = {}
        tags = {t.token.surface: t.tag for t in pos_tag(tokenize("slowly joyous 42"), lexicon)}
        assert tags == {"slowly": "RB", "joyous": "JJ", "42": "CD"}

    @given(st.lists(st.text(alphabet=string.ascii_letters, min_size=1, max_size=10), max_size=8))
    def test_length_preserved_and_closed_tag_set(self, words):
        tokens = [Token(w, i) for i, w in enumerate(words)]
        tagged = pos_tag(tokens, default_tag_lexicon())
        assert len(tagged) == len(tokens)
        assert all(t.tag in TAG_SET for t in tagged)
