import pytest
from helpers import SIG1, SIG2, pp, pw

from rbsys import (
    Ordering,
    compare_primes,
    compare_words,
    enumerate_star_words,
    enumerate_words,
    is_monic,
    leading_word,
)
from rbsys.algebra import Poly
from rbsys.ordering import word_sort_key
from rbsys.terms import Generator, OpApp


def reference_compare(u, v, sig):
    """Direct transcription of the order's definition, used as an oracle
    against the key-based implementation: weight tuples (degree, breadth,
    factors) lexicographically, primes by degree then rules (a)-(c).
    """
    def cmp_prime(p, q):
        if p.degree != q.degree:
            return -1 if p.degree < q.degree else 1
        p_gen, q_gen = isinstance(p, Generator), isinstance(q, Generator)
        if p_gen and q_gen:  # (a)
            i, j = sig.gen_index(p.name), sig.gen_index(q.name)
            return (i > j) - (i < j)
        if p_gen != q_gen:  # (b): an operator applied to 1 beats a generator
            return -1 if p_gen else 1
        # (c): (operator, argument) lexicographically
        i, j = sig.op_rank(p.op), sig.op_rank(q.op)
        if i != j:
            return -1 if i < j else 1
        return cmp_word(p.arg, q.arg)

    def cmp_word(a, b):
        if a.degree != b.degree:
            return -1 if a.degree < b.degree else 1
        if len(a.factors) != len(b.factors):
            return -1 if len(a.factors) < len(b.factors) else 1
        for p, q in zip(a.factors, b.factors):
            c = cmp_prime(p, q)
            if c:
                return c
        return 0

    return cmp_word(u, v)


class TestCompare:
    def test_degree_dominates(self):
        assert compare_words(pw("x"), pw("1"), SIG1) is Ordering.GREATER

    def test_operator_on_unit_beats_generator(self):
        assert compare_words(pw("R(1)"), pw("x"), SIG1) is Ordering.GREATER
        assert compare_primes(OpApp("S", pw("1")), Generator("x"), SIG1) is Ordering.GREATER

    def test_operator_rank_breaks_ties(self):
        assert compare_words(pw("R(1)"), pw("S(1)"), SIG1) is Ordering.GREATER

    def test_arguments_compared_recursively(self):
        assert compare_words(pw("S(R(1))"), pw("S(S(1))"), SIG1) is Ordering.GREATER

    def test_generator_declaration_order(self):
        assert compare_primes(Generator("y"), Generator("x"), SIG2) is Ordering.GREATER

    def test_equal_only_when_structurally_equal(self):
        words = enumerate_words(SIG1, 4)
        keys = {word_sort_key(w, SIG1) for w in words}
        assert len(keys) == len(words)

    def test_totality_and_antisymmetry_via_keys(self):
        # strictly sorted distinct keys give trichotomy on every pair
        words = enumerate_words(SIG2, 3)
        keys = sorted(word_sort_key(w, SIG2) for w in words)
        assert all(a < b for a, b in zip(keys, keys[1:]))

    def test_agrees_with_reference_comparator(self):
        words = enumerate_words(SIG2, 3)
        for u in words:
            for v in words:
                expected = reference_compare(u, v, SIG2)
                assert compare_words(u, v, SIG2) == expected


class TestMonomialOrderProperty:
    def test_contexts_preserve_the_order(self):
        words = enumerate_words(SIG1, 3)
        stars = enumerate_star_words(SIG1, 2)
        bigger = [
            (u, v)
            for u in words
            for v in words
            if compare_words(u, v, SIG1) is Ordering.GREATER
        ]
        for pi in stars:
            for u, v in bigger:
                assert (
                    compare_words(pi.plug(u), pi.plug(v), SIG1)
                    is Ordering.GREATER
                )


class TestLeadingWord:
    def test_simple_examples(self):
        w, c = leading_word(pp("3*x"), SIG1)
        assert (str(w), c) == ("x", 3)
        w, _ = leading_word(pp("x + y + x y", SIG2), SIG2)
        assert str(w) == "x y"

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            leading_word(Poly.zero(), SIG1)

    def test_relation_instance_at_unit_arguments(self):
        p = pp("R(1)R(1) - R(R(1)) - R(S(1))")
        w, c = leading_word(p, SIG1)
        assert str(w) == "R(1) R(1)"
        assert c == 1
        assert is_monic(p, SIG1)

    def test_quadratic_term_leads_both_relations(self):
        # this is what makes the relations a rewriting system
        from rbsys.terms import Word

        words = enumerate_words(SIG1, 3)
        for q in ("R", "S"):
            for u in words:
                for v in words:
                    lead = Word((OpApp(q, u), OpApp(q, v)))
                    head = Word((OpApp(q, Word((OpApp("R", u),) + v.factors)),))
                    tail = Word((OpApp(q, Word(u.factors + (OpApp("S", v),))),))
                    assert compare_words(lead, head, SIG1) is Ordering.GREATER
                    assert compare_words(lead, tail, SIG1) is Ordering.GREATER
