import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infotweet.normalize import (
    NormalizedTweet,
    RawTweet,
    expand_abbreviations,
    expand_contractions,
    lowercase,
    normalize,
    normalize_punctuation,
    normalize_text,
    replace_special_chars,
    segment_hashtags,
)

PRINTABLE = set(chr(c) for c in range(0x20, 0x7F))


def assert_normalized_invariants(text: str):
    assert all(c in PRINTABLE for c in text), f"non-printable-ASCII in {text!r}"
    stripped = text.replace("HTTPURL", "").replace("@USER", "")
    assert stripped == stripped.lower(), f"uppercase outside placeholders in {text!r}"


class TestLowercase:
    def test_plain_sentence(self):
        assert lowercase("Oklahoma's first confirmed case") == (
            "oklahoma's first confirmed case"
        )

    def test_empty(self):
        assert lowercase("") == ""

    def test_placeholder_preserved(self):
        assert lowercase("Cases: 5 HTTPURL") == "cases: 5 HTTPURL"

    def test_user_placeholder(self):
        assert lowercase("@USER Says WHAT @user") == "@USER says what @user"


class TestReplaceSpecialChars:
    def test_curly_quotes(self, lexicons):
        assert replace_special_chars("“quoted”", lexicons.charmap) == '"quoted"'

    def test_identity_on_ascii(self, lexicons):
        assert replace_special_chars("plain ascii", lexicons.charmap) == "plain ascii"

    def test_accented_letters(self, lexicons):
        assert replace_special_chars("café", lexicons.charmap) == "cafe"

    def test_emoji_deleted(self, lexicons):
        assert replace_special_chars("ok \U0001f600\U0001f637!", lexicons.charmap) == "ok !"

    def test_dash_and_ellipsis(self, lexicons):
        assert replace_special_chars("a — b…", lexicons.charmap) == "a - b..."

    def test_control_whitespace_to_space(self, lexicons):
        assert replace_special_chars("a\tb\nc", lexicons.charmap) == "a b c"

    def test_uncased_symbol_folds_lowercase(self, lexicons):
        # Trade mark sign decomposes to "TM"; the fold must not
        # reintroduce uppercase after the lowercasing step.
        assert replace_special_chars("brand™", lexicons.charmap) == "brandtm"

    def test_output_is_ascii(self, lexicons):
        out = replace_special_chars("¼näΔ€", lexicons.charmap)
        assert all(c in PRINTABLE for c in out)


class TestNormalizePunctuation:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("wow!!!!", "wow!"),
            ("a b", "a b"),
            ("  wait....  ", "wait..."),
            ("x..y", "x..y"),
            (".....", "..."),
            ("no???way", "no?way"),
            ("keep!!", "keep!!"),
            ("?!?!?!", "?!?!?!"),
            ("a   b\t\tc", "a b c"),
            ("____", "_"),
        ],
    )
    def test_cases(self, raw, expected):
        assert normalize_punctuation(raw) == expected

    def test_idempotent_on_own_output(self):
        out = normalize_punctuation("hmm...... !!!! ??")
        assert normalize_punctuation(out) == out


class TestExpandContractions:
    def test_dont(self, lexicons):
        assert expand_contractions("don't panic", lexicons.contractions) == "do not panic"

    def test_canonical_its(self, lexicons):
        assert expand_contractions("it's here", lexicons.contractions) == "it is here"

    def test_no_contraction(self, lexicons):
        assert expand_contractions("nothing here", lexicons.contractions) == "nothing here"

    def test_trailing_punctuation(self, lexicons):
        assert expand_contractions("i can't, stop", lexicons.contractions) == (
            "i cannot, stop"
        )

    def test_possessive_untouched(self, lexicons):
        assert expand_contractions("oklahoma's case", lexicons.contractions) == (
            "oklahoma's case"
        )

    def test_accepts_plain_mapping(self):
        assert expand_contractions("won't go", {"won't": "will not"}) == "will not go"


class TestExpandAbbreviations:
    def test_pls_lmk(self, lexicons):
        assert expand_abbreviations("pls lmk", lexicons.abbreviations) == (
            "please let me know"
        )

    def test_whole_token_only(self, lexicons):
        assert expand_abbreviations("plus", lexicons.abbreviations) == "plus"

    def test_govt(self, lexicons):
        assert expand_abbreviations("govt says", lexicons.abbreviations) == (
            "government says"
        )

    def test_single_letter_key_inside_word(self, lexicons):
        assert expand_abbreviations("umbrella u", lexicons.abbreviations) == (
            "umbrella you"
        )


class TestDictionaryClosure:
    """Expansions must be fixed points, or the pipeline loses idempotence."""

    def test_contraction_values_stable(self, lexicons):
        for value in lexicons.contractions.mapping.values():
            once = lexicons.abbreviations.expand(lexicons.contractions.expand(value))
            assert once == value, f"expansion {value!r} is not a fixed point"

    def test_abbreviation_values_stable(self, lexicons):
        for value in lexicons.abbreviations.mapping.values():
            once = lexicons.abbreviations.expand(lexicons.contractions.expand(value))
            assert once == value, f"expansion {value!r} is not a fixed point"


class TestSegmentHashtagsStep:
    def test_tag_replaced_inline(self, lexicons):
        assert segment_hashtags("breaking #SmartNews now", lexicons) == (
            "breaking smart news now"
        )

    def test_underscore_only_body_vanishes(self, lexicons):
        assert segment_hashtags("a #_ b", lexicons) == "a b"

    def test_hash_without_body_kept(self, lexicons):
        assert segment_hashtags("# alone", lexicons) == "# alone"

    def test_double_hash(self, lexicons):
        assert segment_hashtags("##covid19", lexicons) == "covid 19"


class TestPipeline:
    def test_golden_informative_tweet(self, lexicons):
        raw = (
            "Oklahoma's first confirmed case of coronavirus is in Tulsa "
            "County HTTPURL #SmartNews"
        )
        expected = (
            "oklahoma's first confirmed case of coronavirus is in tulsa "
            "county HTTPURL smart news"
        )
        assert normalize_text(raw, lexicons) == expected

    def test_golden_uninformative_tweet(self, lexicons):
        raw = (
            "Ladies and gentlemen, put your hands together for... Johnny "
            "Covid and the Underlying Comorbidities!"
        )
        expected = (
            "ladies and gentlemen, put your hands together for... johnny "
            "covid and the underlying comorbidities!"
        )
        assert normalize_text(raw, lexicons) == expected

    def test_steps_applied_recorded(self, lexicons):
        out = normalize(RawTweet(id="1", text="Hello"), lexicons)
        assert out == NormalizedTweet(id="1", text="hello", steps_applied=(1, 2, 3, 4, 5, 6))

    def test_empty_tweet_rejected(self):
        with pytest.raises(ValueError):
            RawTweet(id="1", text="   ")

    def test_segmented_token_expanded(self, lexicons):
        # "pls" only becomes a token after segmentation; it must still
        # be expanded or the second pass would change the text.
        out = normalize_text("#plshelp", lexicons)
        assert "pls" not in out.split()
        assert normalize_text(out, lexicons) == out

    def test_placeholder_inside_hashtag_untouched(self, lexicons):
        assert normalize_text("#HTTPURL", lexicons) == "#HTTPURL"

    def test_text_may_normalize_to_empty(self, lexicons):
        out = normalize(RawTweet(id="1", text="\U0001f600\U0001f637"), lexicons)
        assert out.text == ""
        assert out.steps_applied == (1, 2, 3, 4, 5, 6)


UNICODE_TEXT = st.text(
    alphabet=st.characters(min_codepoint=0x20, blacklist_categories=("Cs",)),
    max_size=60,
)
TWEET_PARTS = st.lists(
    st.one_of(
        st.sampled_from(
            [
                "HTTPURL",
                "@USER",
                "#SmartNews",
                "#covid19",
                "#stay_home",
                "##tag",
                "#_",
                "don't",
                "it's,",
                "pls",
                "u",
                "plus",
                "....",
                "!!!!",
                "“ok”",
                "\U0001f600",
                "café",
                "™",
            ]
        ),
        st.text(max_size=8),
    ),
    max_size=10,
).map(" ".join)


class TestPipelineProperties:
    @settings(max_examples=300, deadline=None)
    @given(UNICODE_TEXT)
    def test_idempotent_and_ascii_on_unicode(self, lexicons, text):
        once = normalize_text(text, lexicons)
        assert normalize_text(once, lexicons) == once
        assert_normalized_invariants(once)

    @settings(max_examples=300, deadline=None)
    @given(TWEET_PARTS)
    def test_idempotent_and_ascii_on_tweetlike(self, lexicons, text):
        once = normalize_text(text, lexicons)
        assert normalize_text(once, lexicons) == once
        assert_normalized_invariants(once)

    @settings(max_examples=200, deadline=None)
    @given(TWEET_PARTS)
    def test_placeholders_preserved(self, lexicons, text):
        out = normalize_text(text, lexicons)
        assert out.count("HTTPURL") == text.count("HTTPURL")
        assert out.count("@USER") == text.count("@USER")

    @settings(max_examples=100, deadline=None)
    @given(UNICODE_TEXT)
    def test_deterministic(self, lexicons, text):
        assert normalize_text(text, lexicons) == normalize_text(text, lexicons)
