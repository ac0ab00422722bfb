"""Free monoid of operator words.

Words are finite products of prime factors, where a prime is either a
generator from the alphabet or a unary operator applied to a word.  The
empty product is the unit 1.  A star word is a word with exactly one
occurrence of the hole ``★``; plugging a word (or a linear combination)
into the hole is the basic substitution operation everything else is
built on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Union

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = frozenset({"1", "★"})


class SignatureError(ValueError):
    """Raised for an ill-formed alphabet declaration."""


@dataclass(frozen=True)
class Signature:
    """Alphabet: an ordered generator list and an ordered operator list.

    Generator order is the total order on the alphabet (first = smallest).
    Operators are listed in descending rank, so the default ``("R", "S")``
    encodes R > S.
    """

    generators: tuple[str, ...] = ("x",)
    operators: tuple[str, ...] = ("R", "S")

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "operators", tuple(self.operators))
        if not self.operators:
            raise SignatureError("at least one operator is required")
        names = list(self.generators) + list(self.operators)
        for name in names:
            if not _IDENT.match(name):
                raise SignatureError(f"invalid identifier {name!r}")
            if name in _RESERVED:
                raise SignatureError(f"name {name!r} is reserved")
        if len(set(names)) != len(names):
            raise SignatureError("generator and operator names must be distinct")

    @cached_property
    def _gen_index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.generators)}

    @cached_property
    def _op_rank(self) -> dict[str, int]:
        n = len(self.operators)
        return {q: n - 1 - i for i, q in enumerate(self.operators)}

    def is_generator(self, name: str) -> bool:
        return name in self._gen_index

    def is_operator(self, name: str) -> bool:
        return name in self._op_rank

    def gen_index(self, name: str) -> int:
        return self._gen_index[name]

    def op_rank(self, name: str) -> int:
        """Rank of an operator; larger rank = greater operator."""
        return self._op_rank[name]

    @property
    def top_operator(self) -> str:
        return self.operators[0]

    @property
    def bottom_operator(self) -> str:
        return self.operators[-1]


class Generator:
    """Prime factor: a single generator occurrence."""

    __slots__ = ("name", "degree", "depth", "star_count", "_hash")

    def __init__(self, name: str):
        self.name = name
        self.degree = 1
        self.depth = 0
        self.star_count = 0
        self._hash = hash(("g", name))

    def __eq__(self, other):
        return self is other or (type(other) is Generator and self.name == other.name)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Generator({self.name!r})"


class OpApp:
    """Prime factor: a unary operator applied to a word."""

    __slots__ = ("op", "arg", "degree", "depth", "star_count", "_hash")

    def __init__(self, op: str, arg: "Word"):
        self.op = op
        self.arg = arg
        self.degree = 1 + arg.degree
        self.depth = 1 + arg.depth
        self.star_count = arg.star_count
        self._hash = hash(("o", op, arg))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is OpApp
            and self._hash == other._hash
            and self.op == other.op
            and self.arg == other.arg
        )

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.op}({self.arg})"

    def __repr__(self):
        return f"OpApp({self.op!r}, {self.arg!r})"


class Star:
    """The hole ★ of a star word.  Contributes nothing to the degree."""

    __slots__ = ()
    degree = 0
    depth = 0
    star_count = 1

    def __eq__(self, other):
        return type(other) is Star

    def __hash__(self):
        return hash("★")

    def __str__(self):
        return "★"

    def __repr__(self):
        return "STAR"


STAR = Star()

Prime = Union[Generator, OpApp, Star]


class Word:
    """A product of primes; the empty product is the unit 1.

    Structural equality is the only equality; instances are immutable and
    hashable, with degree/depth metrics cached at construction.
    """

    __slots__ = ("factors", "degree", "depth", "star_count", "_hash")

    def __init__(self, factors: tuple[Prime, ...] = ()):
        self.factors = factors
        d = 0
        dep = 0
        stars = 0
        for f in factors:
            d += f.degree
            if f.depth > dep:
                dep = f.depth
            stars += f.star_count
        self.degree = d
        self.depth = dep
        self.star_count = stars
        self._hash = hash(factors)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Word
            and self._hash == other._hash
            and self.factors == other.factors
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def concat(self, other: "Word") -> "Word":
        if not self.factors:
            return other
        if not other.factors:
            return self
        return Word(self.factors + other.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " ".join(str(f) for f in self.factors)

    def __repr__(self):
        return f"<Word {self}>"


UNIT = Word()


def word_of(*factors: Prime) -> Word:
    return Word(tuple(factors))


def degree(w: "Word | StarWord") -> int:
    """Total number of generator and operator occurrences (★ counts 0)."""
    return w.degree


def breadth(w: "Word | StarWord") -> int:
    """Number of top-level prime factors; 0 for the unit."""
    if isinstance(w, StarWord):
        return len(w.word.factors)
    return len(w.factors)


def depth(w: "Word | StarWord") -> int:
    """Operator nesting depth; 0 for generator-only words."""
    return w.depth


class StarWord:
    """A word with exactly one hole ★."""

    __slots__ = ("word", "_hash")

    def __init__(self, word: Word):
        if word.star_count != 1:
            raise ValueError(
                f"star word needs exactly one ★, found {word.star_count}"
            )
        self.word = word
        self._hash = hash(("star", word))

    @property
    def degree(self) -> int:
        return self.word.degree

    @property
    def depth(self) -> int:
        return self.word.depth

    def __eq__(self, other):
        return type(other) is StarWord and self.word == other.word

    def __hash__(self):
        return self._hash

    def __str__(self):
        return str(self.word)

    def __repr__(self):
        return f"<StarWord {self.word}>"

    def plug(self, s: Word) -> Word:
        """Replace the hole by a word; its factors are spliced in place."""
        return _plug(self.word, s)


def _plug(host: Word, s: Word) -> Word:
    out: list[Prime] = []
    for f in host.factors:
        if isinstance(f, Star):
            out.extend(s.factors)
        elif isinstance(f, OpApp) and f.star_count:
            out.append(OpApp(f.op, _plug(f.arg, s)))
        else:
            out.append(f)
    return Word(tuple(out))


def substitute(pi: StarWord, s):
    """Plug ``s`` into the hole of ``pi``.

    For a word the result is a word; a linear combination is substituted
    term by term with coefficients carried along.
    """
    if isinstance(s, Word):
        return pi.plug(s)
    return s.map_words(pi.plug)


def find_subword_contexts(host: Word, pattern: Word) -> list[StarWord]:
    """All ways ``pattern`` occurs in ``host`` as a contiguous factor window
    at some nesting level; each occurrence is returned as the star word
    that reproduces ``host`` when the pattern is plugged back in.
    """
    if not pattern.factors:
        raise ValueError("empty pattern")
    found: list[StarWord] = []
    _scan_contexts(host, pattern, found)
    return found


def _scan_contexts(host: Word, pattern: Word, found: list[StarWord]) -> None:
    hf, pf = host.factors, pattern.factors
    k = len(pf)
    for i in range(len(hf) - k + 1):
        if hf[i : i + k] == pf:
            found.append(StarWord(Word(hf[:i] + (STAR,) + hf[i + k :])))
    for i, f in enumerate(hf):
        if isinstance(f, OpApp):
            inner: list[StarWord] = []
            _scan_contexts(f.arg, pattern, inner)
            for ctx in inner:
                wrapped = hf[:i] + (OpApp(f.op, ctx.word),) + hf[i + 1 :]
                found.append(StarWord(Word(wrapped)))


@lru_cache(maxsize=None)
def _words_exact(sig: Signature, n: int) -> tuple[Word, ...]:
    if n == 0:
        return (UNIT,)
    out: list[Word] = []
    for k in range(1, n + 1):
        for p in _primes_exact(sig, k):
            for rest in _words_exact(sig, n - k):
                out.append(Word((p,) + rest.factors))
    return tuple(out)


@lru_cache(maxsize=None)
def _primes_exact(sig: Signature, k: int) -> tuple[Prime, ...]:
    out: list[Prime] = []
    if k == 1:
        out.extend(Generator(g) for g in sig.generators)
    for q in sig.operators:
        out.extend(OpApp(q, w) for w in _words_exact(sig, k - 1))
    return tuple(out)


def enumerate_words(sig: Signature, max_degree: int) -> list[Word]:
    """All words of degree <= max_degree, each once, ascending deg-lex."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    from .ordering import word_sort_key

    out: list[Word] = []
    for n in range(max_degree + 1):
        out.extend(_words_exact(sig, n))
    out.sort(key=lambda w: word_sort_key(w, sig))
    return out


@lru_cache(maxsize=None)
def _star_words_exact(sig: Signature, n: int) -> tuple[Word, ...]:
    out: list[Word] = []
    for d in range(n + 1):
        for sp in _star_primes_exact(sig, d):
            budget = n - d
            for dl in range(budget + 1):
                for left in _words_exact(sig, dl):
                    for right in _words_exact(sig, budget - dl):
                        out.append(Word(left.factors + (sp,) + right.factors))
    return tuple(out)


@lru_cache(maxsize=None)
def _star_primes_exact(sig: Signature, d: int) -> tuple[Prime, ...]:
    out: list[Prime] = []
    if d == 0:
        out.append(STAR)
    else:
        for q in sig.operators:
            out.extend(OpApp(q, w) for w in _star_words_exact(sig, d - 1))
    return tuple(out)


def enumerate_star_words(sig: Signature, max_degree: int) -> list[StarWord]:
    """All star words of degree <= max_degree (★ itself has degree 0)."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    from .ordering import word_sort_key

    out: list[Word] = []
    for n in range(max_degree + 1):
        out.extend(_star_words_exact(sig, n))
    out.sort(key=lambda w: word_sort_key(w, sig))
    return [StarWord(w) for w in out]


