"""Degree-lexicographic order on operator words.

Words are compared by (degree, breadth, factor sequence); primes of equal
degree are compared by generator order, then operator-applied-to-1 beats a
generator, then (operator rank, argument) lexicographically.  This is a
monomial order, which is what makes leading words and the rewriting
system below well defined.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from functools import lru_cache

from .terms import Generator, OpApp, Signature, Word


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@lru_cache(maxsize=None)
def word_sort_key(w: Word, sig: Signature):
    """Sort key realizing the deg-lex order: bigger key = bigger word."""
    return (w.degree, len(w.factors), tuple(prime_sort_key(f, sig) for f in w.factors))


def prime_sort_key(p, sig: Signature):
    if isinstance(p, Generator):
        return (1, 0, sig.gen_index(p.name))
    if isinstance(p, OpApp):
        return (p.degree, 1, sig.op_rank(p.op), word_sort_key(p.arg, sig))
    return (0, -1)  # the hole; only used to sort star words deterministically


def _cmp(a, b) -> Ordering:
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def compare_words(u: Word, v: Word, sig: Signature) -> Ordering:
    return _cmp(word_sort_key(u, sig), word_sort_key(v, sig))


def compare_primes(p, q, sig: Signature) -> Ordering:
    return _cmp(prime_sort_key(p, sig), prime_sort_key(q, sig))


def leading_word(p, sig: Signature) -> tuple[Word, Fraction]:
    """Greatest monomial of a nonzero polynomial, with its coefficient."""
    if not p:
        raise ValueError("the zero polynomial has no leading word")
    w = max(p.words(), key=lambda m: word_sort_key(m, sig))
    return w, p.coeff(w)


def is_monic(p, sig: Signature) -> bool:
    return bool(p) and leading_word(p, sig)[1] == 1
