"""Normal forms for the free Rota-Baxter system and the diamond product.

The defining relations rewrite any two adjacent primes with the same
outer operator::

    R(u) R(v)  ->  R(R(u) v) + R(u S(v))
    S(u) S(v)  ->  S(R(u) v) + S(u S(v))

Words containing no such adjacent pair at any nesting level form the
basis of the quotient algebra; ``normal_form`` rewrites onto that basis
and ``diamond`` computes the induced product directly by recursion.  The
two routes are independent and cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import Poly
from .ordering import word_sort_key
from .terms import (
    STAR,
    OpApp,
    Signature,
    StarWord,
    Word,
    enumerate_words,
)


class NotBasisWordError(ValueError):
    """Raised when a basis-only operation receives a reducible word."""


@dataclass(frozen=True)
class RuleMatch:
    """A located occurrence of a pattern Q(u)Q(v) inside a word."""

    context: StarWord
    op: str
    u: Word
    v: Word

    def matched_word(self) -> Word:
        pair = Word((OpApp(self.op, self.u), OpApp(self.op, self.v)))
        return self.context.plug(pair)


@dataclass(frozen=True)
class ReductionStep:
    word: Word
    coeff: Fraction
    match: RuleMatch
    replacement: Poly


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    final: Poly

    def replay(self, start: Poly) -> Poly:
        """Re-apply the recorded steps; returns the resulting polynomial."""
        cur = start
        for step in self.steps:
            c = cur.coeff(step.word)
            cur = cur + c * (step.replacement - Poly.of_word(step.word))
        return cur


def find_redex(w: Word) -> Optional[RuleMatch]:
    """Leftmost-outermost occurrence of a same-operator adjacent pair.

    Positions are visited left to right; at each position the pair
    starting there is checked before descending into the factor.
    """
    fs = w.factors
    n = len(fs)
    for i in range(n):
        f = fs[i]
        if (
            i + 1 < n
            and isinstance(f, OpApp)
            and isinstance(fs[i + 1], OpApp)
            and f.op == fs[i + 1].op
        ):
            ctx = StarWord(Word(fs[:i] + (STAR,) + fs[i + 2 :]))
            return RuleMatch(ctx, f.op, f.arg, fs[i + 1].arg)
        if isinstance(f, OpApp):
            inner = find_redex(f.arg)
            if inner is not None:
                wrapped = fs[:i] + (OpApp(f.op, inner.context.word),) + fs[i + 1 :]
                return RuleMatch(
                    StarWord(Word(wrapped)), inner.op, inner.u, inner.v
                )
    return None


def find_redex_rightmost_innermost(w: Word) -> Optional[RuleMatch]:
    """Alternative strategy used to cross-check confluence."""
    fs = w.factors
    n = len(fs)
    for i in range(n - 1, -1, -1):
        f = fs[i]
        if isinstance(f, OpApp):
            inner = find_redex_rightmost_innermost(f.arg)
            if inner is not None:
                wrapped = fs[:i] + (OpApp(f.op, inner.context.word),) + fs[i + 1 :]
                return RuleMatch(
                    StarWord(Word(wrapped)), inner.op, inner.u, inner.v
                )
        if (
            i + 1 < n
            and isinstance(f, OpApp)
            and isinstance(fs[i + 1], OpApp)
            and f.op == fs[i + 1].op
        ):
            ctx = StarWord(Word(fs[:i] + (STAR,) + fs[i + 2 :]))
            return RuleMatch(ctx, f.op, f.arg, fs[i + 1].arg)
    return None


_STRATEGIES = {
    "leftmost-outermost": find_redex,
    "rightmost-innermost": find_redex_rightmost_innermost,
}


@lru_cache(maxsize=None)
def is_rbs_word(w: Word) -> bool:
    """True iff the word has no same-operator adjacent pair anywhere."""
    return find_redex(w) is None


@dataclass(frozen=True)
class RewriteRule:
    """Replacement for one outer operator Q:

    Q(u)Q(v) -> head_coeff * Q(head_op(u) v) + tail_coeff * Q(u tail_op(v))
    """

    op: str
    head_op: str
    tail_op: str
    head_coeff: Fraction = Fraction(1)
    tail_coeff: Fraction = Fraction(1)


class ReductionSystem:
    """A family of rewrite rules, one per operator, with a normal-form cache.

    The standard system carries the defining Rota-Baxter-system relations;
    deliberately corrupted variants are used to show the verifier is not
    vacuous.  Caches are per instance and transparent: results never depend
    on cache state.
    """

    def __init__(self, sig: Signature, rules: dict[str, RewriteRule]):
        self.sig = sig
        self.rules = rules
        self._nf: dict[tuple[str, Word], Poly] = {}

    @classmethod
    def standard(cls, sig: Signature) -> "ReductionSystem":
        top, bottom = sig.top_operator, sig.bottom_operator
        rules = {
            q: RewriteRule(q, head_op=top, tail_op=bottom) for q in sig.operators
        }
        return cls(sig, rules)

    def mutated(self, op: str, which: str) -> "ReductionSystem":
        """Copy of this system with one or both remainder signs flipped."""
        if which not in ("head", "tail", "both"):
            raise ValueError("which must be 'head', 'tail', or 'both'")
        rule = self.rules[op]
        head = -rule.head_coeff if which in ("head", "both") else rule.head_coeff
        tail = -rule.tail_coeff if which in ("tail", "both") else rule.tail_coeff
        rules = dict(self.rules)
        rules[op] = RewriteRule(op, rule.head_op, rule.tail_op, head, tail)
        return ReductionSystem(self.sig, rules)

    def rewrite(self, m: RuleMatch) -> Poly:
        """Replace the matched occurrence by the rule remainder, in context."""
        rule = self.rules[m.op]
        head_word = Word((OpApp(m.op, Word((OpApp(rule.head_op, m.u),) + m.v.factors)),))
        tail_word = Word((OpApp(m.op, Word(m.u.factors + (OpApp(rule.tail_op, m.v),))),))
        plug = m.context.plug
        out = Poly.of_word(plug(head_word), rule.head_coeff)
        return out + Poly.of_word(plug(tail_word), rule.tail_coeff)

    def normal_form_word(
        self, w: Word, strategy: str = "leftmost-outermost"
    ) -> Poly:
        """Fully reduce one word; memoized per strategy."""
        select = _STRATEGIES[strategy]
        cache = self._nf
        key = (strategy, w)
        hit = cache.get(key)
        if hit is not None:
            return hit
        stack = [w]
        while stack:
            top = stack[-1]
            tkey = (strategy, top)
            if tkey in cache:
                stack.pop()
                continue
            m = select(top)
            if m is None:
                cache[tkey] = Poly.of_word(top)
                stack.pop()
                continue
            repl = self.rewrite(m)
            pending = [u for u in repl.words() if (strategy, u) not in cache]
            if pending:
                stack.extend(pending)
                continue
            acc = Poly.zero()
            for u, c in repl.items():
                acc = acc + c * cache[(strategy, u)]
            cache[tkey] = acc
            stack.pop()
        return cache[key]

    def normal_form(self, p: Poly, strategy: str = "leftmost-outermost") -> Poly:
        out = Poly.zero()
        for w, c in p.items():
            out = out + c * self.normal_form_word(w, strategy)
        return out

    def normal_form_traced(self, p: Poly) -> tuple[Poly, ReductionTrace]:
        """Greatest-first elimination of leading words, with a full trace.

        Each step rewrites one occurrence inside the currently greatest
        reducible monomial, so matched words are strictly decreasing; this
        is asserted step by step.
        """
        sig = self.sig
        steps: list[ReductionStep] = []
        cur = p
        last_key = None
        while True:
            reducible = [
                (w, c) for w, c in cur.items() if not is_rbs_word(w)
            ]
            if not reducible:
                break
            w, c = max(reducible, key=lambda t: word_sort_key(t[0], sig))
            key = word_sort_key(w, sig)
            if last_key is not None and not key < last_key:
                raise AssertionError("leading word failed to decrease")
            last_key = key
            m = find_redex(w)
            repl = self.rewrite(m)
            for u in repl.words():
                if not word_sort_key(u, sig) < key:
                    raise AssertionError(
                        "rewrite did not decrease the matched word"
                    )
            steps.append(ReductionStep(w, c, m, repl))
            cur = cur + c * (repl - Poly.of_word(w))
        return cur, ReductionTrace(tuple(steps), cur)


_standard_systems: dict[Signature, ReductionSystem] = {}


def standard_system(sig: Signature) -> ReductionSystem:
    system = _standard_systems.get(sig)
    if system is None:
        system = ReductionSystem.standard(sig)
        _standard_systems[sig] = system
    return system


def rewrite_redex(m: RuleMatch, sig: Signature) -> Poly:
    """One step of the standard system at a located occurrence."""
    return standard_system(sig).rewrite(m)


def normal_form(
    p: Poly | Word, sig: Signature, strategy: str = "leftmost-outermost"
) -> Poly:
    """The unique basis representative of ``p`` modulo the relations."""
    if isinstance(p, Word):
        p = Poly.of_word(p)
    return standard_system(sig).normal_form(p, strategy)


def normal_form_traced(p: Poly | Word, sig: Signature) -> tuple[Poly, ReductionTrace]:
    if isinstance(p, Word):
        p = Poly.of_word(p)
    return standard_system(sig).normal_form_traced(p)


def basis_words(sig: Signature, max_degree: int) -> list[Word]:
    """All basis words of degree <= max_degree, ascending deg-lex."""
    return [w for w in enumerate_words(sig, max_degree) if is_rbs_word(w)]


@lru_cache(maxsize=None)
def _diamond_words(sig: Signature, w: Word, v: Word) -> Poly:
    if not w.factors:
        return Poly.of_word(v)
    if not v.factors:
        return Poly.of_word(w)
    wf, vf = w.factors, v.factors
    if len(wf) == 1 and len(vf) == 1:
        a, b = wf[0], vf[0]
        if isinstance(a, OpApp) and isinstance(b, OpApp) and a.op == b.op:
            top = Word((OpApp(sig.top_operator, a.arg),))
            bottom = Word((OpApp(sig.bottom_operator, b.arg),))
            inner = _diamond_words(sig, top, b.arg) + _diamond_words(
                sig, a.arg, bottom
            )
            return Poly(
                {Word((OpApp(a.op, m),)): c for m, c in inner.items()}
            )
        return Poly.of_word(Word(wf + vf))
    mid = _diamond_words(sig, Word((wf[-1],)), Word((vf[0],)))
    prefix, suffix = wf[:-1], vf[1:]
    return Poly(
        {Word(prefix + m.factors + suffix): c for m, c in mid.items()}
    )


def diamond(w: Word, v: Word, sig: Signature) -> Poly:
    """Product of two basis words, computed by structural recursion.

    Agrees with ``normal_form`` of the concatenation; every monomial of
    the result is again a basis word of degree deg(w) + deg(v).
    """
    if not is_rbs_word(w):
        raise NotBasisWordError(f"not a basis word: {w}")
    if not is_rbs_word(v):
        raise NotBasisWordError(f"not a basis word: {v}")
    return _diamond_words(sig, w, v)


def diamond_poly(p: Poly, q: Poly, sig: Signature) -> Poly:
    """Bilinear extension of the diamond product."""
    out = Poly.zero()
    for w, c in p.items():
        for v, d in q.items():
            out = out + (c * d) * diamond(w, v, sig)
    return out
