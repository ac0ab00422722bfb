"""Shared fixtures-in-spirit: parsing shortcuts and independent oracles.

The oracles here (counting recurrences and the naive reducer) are kept
deliberately separate from the library's own code paths so the tests
cross-check two routes rather than one implementation against itself.
"""

from __future__ import annotations

import random

from rbsys import Signature, Word, parse_poly, parse_star_word, parse_word
from rbsys.algebra import Poly
from rbsys.terms import UNIT, Generator, OpApp

SIG1 = Signature(("x",))
SIG2 = Signature(("x", "y"))
SIG3 = Signature(("x", "y", "z"))


def pw(text: str, sig: Signature = SIG1) -> Word:
    return parse_word(text, sig)


def pp(text: str, sig: Signature = SIG1) -> Poly:
    return parse_poly(text, sig)


def psw(text: str, sig: Signature = SIG1):
    return parse_star_word(text, sig)


def word_counts(n_gens: int, n_ops: int, max_degree: int) -> list[int]:
    """Number of words of each exact degree, by the prime-decomposition
    recurrence: a word is a first prime of degree k followed by any word
    of degree n - k, and a prime of degree k is a generator (k = 1) or an
    operator applied to a word of degree k - 1.
    """
    a = [1]
    p = [0]
    for n in range(1, max_degree + 1):
        p.append((n_gens if n == 1 else 0) + n_ops * a[n - 1])
        a.append(sum(p[k] * a[n - k] for k in range(1, n + 1)))
    return a


def star_word_counts(n_gens: int, n_ops: int, max_degree: int) -> list[int]:
    """Number of one-hole words of each exact degree: a hole-carrying
    prime of degree d flanked by ordinary words making up the rest.
    """
    a = word_counts(n_gens, n_ops, max_degree)
    s: list[int] = []
    ps: list[int] = []
    for n in range(max_degree + 1):
        ps.append((1 if n == 0 else 0) + (n_ops * s[n - 1] if n >= 1 else 0))
        s.append(
            sum(
                ps[d] * sum(a[l] * a[n - d - l] for l in range(n - d + 1))
                for d in range(n + 1)
            )
        )
    return s


def basis_word_counts(n_gens: int, n_ops: int, max_degree: int) -> list[int]:
    """Number of basis words per degree, by a transfer recurrence over the
    type of the last prime (generator, or which operator heads it): an
    operator prime may not follow a prime headed by the same operator.
    """
    b = [1]
    # f[n][t]: words of degree n ending in type t (0 = generator, i+1 = op i)
    f: list[list[int]] = [[0] * (n_ops + 1)]
    for n in range(1, max_degree + 1):
        row = [0] * (n_ops + 1)
        # generator primes have degree 1
        if n == 1:
            row[0] += n_gens
        row[0] += n_gens * sum(f[n - 1])
        for i in range(n_ops):
            for d in range(1, n + 1):
                primes = b[d - 1]  # op applied to any basis word of degree d-1
                if d == n:
                    row[i + 1] += primes
                rest = sum(f[n - d]) - f[n - d][i + 1]
                row[i + 1] += primes * rest
        f.append(row)
        b.append(sum(row))
    b[0] = 1
    return b


def random_word_exact(rng: random.Random, sig: Signature, n: int) -> Word:
    if n == 0:
        return UNIT
    k = rng.randint(1, n)
    return Word((random_prime(rng, sig, k),) + random_word_exact(rng, sig, n - k).factors)


def random_prime(rng: random.Random, sig: Signature, k: int):
    n_gens, n_ops = len(sig.generators), len(sig.operators)
    if k == 1 and rng.randrange(n_gens + n_ops) < n_gens:
        return Generator(rng.choice(sig.generators))
    return OpApp(rng.choice(sig.operators), random_word_exact(rng, sig, k - 1))


def random_word(rng: random.Random, sig: Signature, max_degree: int) -> Word:
    return random_word_exact(rng, sig, rng.randint(0, max_degree))


def naive_normal_form(p: Poly, sig: Signature) -> Poly:
    """Fixpoint reducer independent of the library engine.

    Finds redexes innermost-first by its own traversal and builds the
    replacement words from scratch.
    """
    top, bottom = sig.operators[0], sig.operators[-1]

    def reduce_once(w: Word):
        fs = w.factors
        for i, f in enumerate(fs):
            if isinstance(f, OpApp):
                inner = reduce_once(f.arg)
                if inner is not None:
                    return [
                        (c, Word(fs[:i] + (OpApp(f.op, u),) + fs[i + 1 :]))
                        for c, u in inner
                    ]
        for i in range(len(fs) - 1):
            a, b = fs[i], fs[i + 1]
            if isinstance(a, OpApp) and isinstance(b, OpApp) and a.op == b.op:
                left = Word((OpApp(top, a.arg),) + b.arg.factors)
                right = Word(a.arg.factors + (OpApp(bottom, b.arg),))
                return [
                    (1, Word(fs[:i] + (OpApp(a.op, left),) + fs[i + 2 :])),
                    (1, Word(fs[:i] + (OpApp(a.op, right),) + fs[i + 2 :])),
                ]
        return None

    terms = dict(p.items())
    while True:
        target = None
        for w in sorted(terms, key=str):
            step = reduce_once(w)
            if step is not None:
                target = (w, step)
                break
        if target is None:
            return Poly(terms)
        w, step = target
        c = terms.pop(w)
        for d, u in step:
            s = terms.get(u, 0) + c * d
            if s:
                terms[u] = s
            elif u in terms:
                del terms[u]
