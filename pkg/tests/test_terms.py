import random

import pytest
from helpers import (
    SIG1,
    SIG2,
    SIG3,
    pp,
    psw,
    pw,
    random_word,
    star_word_counts,
    word_counts,
)
from hypothesis import given, settings
from hypothesis import strategies as st

from rbsys import (
    Signature,
    SignatureError,
    StarWord,
    Word,
    breadth,
    degree,
    depth,
    enumerate_star_words,
    enumerate_words,
    parse,
    substitute,
)
from rbsys.ordering import word_sort_key
from rbsys.terms import UNIT, OpApp


class TestSignature:
    def test_defaults(self):
        sig = Signature()
        assert sig.generators == ("x",)
        assert sig.operators == ("R", "S")
        assert sig.top_operator == "R"
        assert sig.bottom_operator == "S"

    def test_rank_order_is_descending(self):
        assert SIG1.op_rank("R") > SIG1.op_rank("S")
        assert SIG2.gen_index("x") < SIG2.gen_index("y")

    @pytest.mark.parametrize(
        "gens,ops",
        [
            (("x", "x"), ("R", "S")),
            (("x",), ()),
            (("x",), ("R", "x")),
            (("1",), ("R",)),
            (("x y",), ("R",)),
            (("★",), ("R",)),
        ],
    )
    def test_rejects_bad_alphabets(self, gens, ops):
        with pytest.raises(SignatureError):
            Signature(gens, ops)


class TestMetrics:
    def test_unit(self):
        one = pw("1")
        assert degree(one) == 0
        assert breadth(one) == 0
        assert depth(one) == 0

    def test_mixed_nested_word_metrics(self):
        w = pw("x1 x2 R(R(x1) S(x2))", Signature(("x1", "x2")))
        assert degree(w) == 7
        assert breadth(w) == 3
        assert depth(w) == 2

    def test_single_operator_on_unit(self):
        assert degree(pw("R(1)")) == 1
        assert depth(pw("R(x)")) == 1

    def test_generator_word_is_flat(self):
        w = pw("x y", SIG2)
        assert depth(w) == 0
        assert breadth(w) == 2

    def test_nested_depth(self):
        assert depth(pw("R(S(x) y)", SIG2)) == 2
        assert breadth(pw("R(x y)", SIG2)) == 1

    def test_metrics_match_direct_recomputation(self):
        def deg(w):
            return sum(
                1 + deg(f.arg) if isinstance(f, OpApp) else 1 for f in w.factors
            )

        def dep(w):
            return max(
                (1 + dep(f.arg) for f in w.factors if isinstance(f, OpApp)),
                default=0,
            )

        for w in enumerate_words(SIG2, 3):
            assert degree(w) == deg(w)
            assert depth(w) == dep(w)
            assert breadth(w) == len(w.factors)


class TestSubstitution:
    def test_identity_context(self):
        pi = psw("★")
        w = pw("R(x) S(1)")
        assert substitute(pi, w) == w

    def test_plug_under_operator(self):
        pi = psw("R(★ x)")
        assert substitute(pi, pw("S(1)")) == pw("R(S(1) x)")

    def test_linear_extension(self):
        pi = psw("★")
        p = pp("2*x - y", SIG2)
        assert substitute(psw("★", SIG2), p) == p

    def test_linear_extension_in_context(self):
        pi = psw("S(★) y", SIG2)
        out = substitute(pi, pp("2*x - y", SIG2))
        assert out == pp("2*S(x) y - S(y) y", SIG2)

    def test_degree_additivity_bounded(self):
        words = enumerate_words(SIG1, 3)
        for pi in enumerate_star_words(SIG1, 2):
            for s in words:
                assert degree(pi.plug(s)) == degree(pi) + degree(s)

    def test_star_word_requires_exactly_one_hole(self):
        with pytest.raises(ValueError):
            StarWord(pw("x"))


class TestEnumeration:
    def test_degree_zero(self):
        assert enumerate_words(SIG1, 0) == [UNIT]

    def test_degree_one(self):
        assert [str(w) for w in enumerate_words(SIG1, 1)] == ["1", "x", "S(1)", "R(1)"]

    def test_total_count_up_to_two(self):
        # brute oracle: 1 + 3 + 15 words of degrees 0, 1, 2
        assert sum(word_counts(1, 2, 2)) == 19
        assert len(enumerate_words(SIG1, 2)) == 19

    @pytest.mark.parametrize("sig,n_gens,max_degree", [(SIG1, 1, 5), (SIG2, 2, 4)])
    def test_counts_match_recurrence(self, sig, n_gens, max_degree):
        expected = word_counts(n_gens, 2, max_degree)
        words = enumerate_words(sig, max_degree)
        by_degree = [0] * (max_degree + 1)
        for w in words:
            by_degree[w.degree] += 1
        assert by_degree == expected

    def test_no_duplicates_and_strictly_ascending(self):
        words = enumerate_words(SIG2, 3)
        keys = [word_sort_key(w, SIG2) for w in words]
        assert all(a < b for a, b in zip(keys, keys[1:]))
        assert len(set(words)) == len(words)

    def test_star_degree_zero(self):
        stars = enumerate_star_words(SIG1, 0)
        assert [str(s) for s in stars] == ["★"]

    def test_star_degree_one_members(self):
        texts = {str(s) for s in enumerate_star_words(SIG1, 1)}
        assert {"R(★)", "S(★)", "x ★", "★ x"} <= texts

    def test_star_words_have_one_hole_and_match_recurrence(self):
        for max_degree, sig, n_gens in ((3, SIG1, 1), (2, SIG2, 2)):
            stars = enumerate_star_words(sig, max_degree)
            assert all(s.word.star_count == 1 for s in stars)
            assert len(set(stars)) == len(stars)
            by_degree = [0] * (max_degree + 1)
            for s in stars:
                by_degree[s.degree] += 1
            assert by_degree == star_word_counts(n_gens, 2, max_degree)


class TestRoundTrip:
    def test_exhaustive_low_degree(self):
        for w in enumerate_words(SIG1, 4):
            assert parse(str(w), SIG1) == w

    def test_random_deeper_words(self):
        rng = random.Random(8133)
        for _ in range(1000):
            sig = rng.choice((SIG1, SIG2, SIG3))
            w = random_word(rng, sig, 8)
            assert parse(str(w), sig) == w

    def test_star_words_round_trip(self):
        for s in enumerate_star_words(SIG2, 2):
            assert parse(str(s), SIG2) == s


@st.composite
def random_words_st(draw):
    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_word(rng, SIG2, 6)


@given(random_words_st(), random_words_st())
@settings(max_examples=60, deadline=None)
def test_concat_degree_and_breadth_add(u, v):
    w = u.concat(v)
    assert degree(w) == degree(u) + degree(v)
    assert breadth(w) == breadth(u) + breadth(v)


@given(random_words_st())
@settings(max_examples=60, deadline=None)
def test_words_are_hashable_value_objects(w):
    clone = Word(tuple(w.factors))
    assert clone == w
    assert hash(clone) == hash(w)
    assert parse(str(w), SIG2) == w
