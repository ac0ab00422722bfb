"""Text and JSON syntax for words, star words, and polynomials.

Grammar (whitespace optional, juxtaposition is concatenation)::

    poly     := ['+'|'-'] term (('+'|'-') term)*
    term     := rational ['*'] [word] | word
    word     := '1' | prime+
    prime    := generator | operator '(' poly ')' | '★'
    rational := integer ['/' positive-integer]

Operator arguments may be polynomials; the kernel distributes them, so a
parsed value is always a flat combination of words.  Canonical output
prints monomials in descending deg-lex order and operator arguments as
single words.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Poly, TensorPoly, apply_operator_linear, concat_mul
from .ordering import word_sort_key
from .terms import STAR, Signature, StarWord, Word

TENSOR_SIGN = "⊗"
ASCII_TENSOR_SIGN = " (x) "


class ParseError(ValueError):
    """Syntax or vocabulary error, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(
    r"(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*/()★⊗])"
)
_WS = re.compile(r"\s*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        pos = _WS.match(text, pos).end()
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message):
        raise ParseError(message, self.peek()[2])

    def at_symbol(self, s):
        kind, val, _ = self.peek()
        return kind == "sym" and val == s

    def expect_symbol(self, s):
        if not self.at_symbol(s):
            self.error(f"expected {s!r}")
        self.next()

    # poly := ['+'|'-'] term (('+'|'-') term)*
    def poly(self) -> Poly:
        sign = 1
        if self.at_symbol("+") or self.at_symbol("-"):
            sign = -1 if self.next()[1] == "-" else 1
        out = sign * self.term()
        while self.at_symbol("+") or self.at_symbol("-"):
            sign = -1 if self.next()[1] == "-" else 1
            out = out + sign * self.term()
        return out

    def term(self) -> Poly:
        kind, val, _ = self.peek()
        coeff = Fraction(1)
        saw_coeff = saw_star = False
        if kind == "num":
            # A bare "1" is the unit word unless it is followed by '/' or '*'.
            if val == "1" and not self._next_is_fraction_tail():
                self.next()
                return self._word_tail(Poly.of_word(Word()))
            coeff = self.rational()
            saw_coeff = True
            if self.at_symbol("*"):
                self.next()
                saw_star = True
        if self._at_word_start():
            return coeff * self.word()
        if saw_coeff and not saw_star:
            return Poly.of_word(Word(), coeff)
        self.error("expected a word or coefficient")

    def _next_is_fraction_tail(self) -> bool:
        if self.i + 1 < len(self.tokens):
            kind, val, _ = self.tokens[self.i + 1]
            return kind == "sym" and val in ("/", "*")
        return False

    def rational(self) -> Fraction:
        kind, val, _ = self.next()
        if kind != "num":
            self.error("expected a number")
        num = int(val)
        if self.at_symbol("/"):
            self.next()
            kind, val, _ = self.next()
            if kind != "num" or int(val) == 0:
                self.error("expected a positive denominator")
            return Fraction(num, int(val))
        return Fraction(num)

    def _at_word_start(self) -> bool:
        kind, val, _ = self.peek()
        if kind == "ident":
            return True
        if kind == "sym" and val == "★":
            return True
        return kind == "num" and val == "1"

    def word(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "num" and val == "1":
            self.next()
            return self._word_tail(Poly.of_word(Word()))
        out = self.prime()
        return self._word_tail(out)

    def _word_tail(self, acc: Poly) -> Poly:
        while self._at_word_start():
            kind, val, _ = self.peek()
            if kind == "num":  # a stray '1' inside a word is just the unit
                self.next()
                continue
            acc = concat_mul(acc, self.prime())
        return acc

    def prime(self) -> Poly:
        kind, val, pos = self.next()
        if kind == "sym" and val == "★":
            return Poly.of_word(Word((STAR,)))
        if kind != "ident":
            raise ParseError("expected a generator, operator, or ★", pos)
        if self.sig.is_generator(val):
            from .terms import Generator

            return Poly.of_word(Word((Generator(val),)))
        if self.sig.is_operator(val):
            if not self.at_symbol("("):
                raise ParseError(f"operator {val!r} needs parentheses", pos)
            self.next()
            inner = self.poly()
            self.expect_symbol(")")
            return _apply_op_any(val, inner)
        raise ParseError(f"unknown identifier {val!r}", pos)


def _apply_op_any(op: str, p: Poly) -> Poly:
    # Like apply_operator_linear but without vocabulary checks, so star
    # words can pass through operator arguments while parsing.
    from .terms import OpApp

    return Poly({Word((OpApp(op, w),)): c for w, c in p.items()})


def _parse_to_poly(text: str, sig: Signature) -> Poly:
    p = _Parser(text, sig)
    out = p.poly()
    if p.i < len(p.tokens):
        p.error("trailing input")
    return out


def parse_poly(text: str, sig: Signature) -> Poly:
    """Parse a polynomial; holes are not allowed."""
    out = _parse_to_poly(text, sig)
    for w in out.words():
        if w.star_count:
            raise ParseError("★ is not allowed in a polynomial", 0)
    return out


def parse_word(text: str, sig: Signature) -> Word:
    """Parse a single word (one monomial, coefficient 1, no hole)."""
    out = _parse_to_poly(text, sig)
    items = list(out.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ParseError("expected a single word, found a polynomial", 0)
    w = items[0][0]
    if w.star_count:
        raise ParseError("expected a word without ★", 0)
    return w


def parse_star_word(text: str, sig: Signature) -> StarWord:
    """Parse a star word (one monomial, coefficient 1, exactly one hole)."""
    out = _parse_to_poly(text, sig)
    items = list(out.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ParseError("expected a single star word", 0)
    w = items[0][0]
    if w.star_count != 1:
        raise ParseError(
            f"expected exactly one ★, found {w.star_count}", 0
        )
    return StarWord(w)


def parse(text: str, sig: Signature):
    """Parse to the most specific of Word, StarWord, or Poly."""
    out = _parse_to_poly(text, sig)
    items = list(out.items())
    if len(items) == 1 and items[0][1] == 1:
        w = items[0][0]
        if w.star_count == 0:
            return w
        if w.star_count == 1:
            return StarWord(w)
    for w in out.words():
        if w.star_count:
            raise ParseError("★ is only allowed in a plain star word", 0)
    return out


def format_word(w: Word | StarWord) -> str:
    return str(w)


def _format_signed_terms(parts: list[tuple[Fraction, str]]) -> str:
    chunks: list[str] = []
    for i, (coeff, body) in enumerate(parts):
        mag = abs(coeff)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if i == 0:
            chunks.append(f"-{text}" if coeff < 0 else text)
        else:
            chunks.append(f" - {text}" if coeff < 0 else f" + {text}")
    return "".join(chunks)


def format_poly(p: Poly, sig: Signature) -> str:
    """Canonical text: monomials in descending deg-lex order."""
    if not p:
        return "0"
    terms = sorted(p.items(), key=lambda t: word_sort_key(t[0], sig), reverse=True)
    return _format_signed_terms([(c, str(w)) for w, c in terms])


def format_tensor(t: TensorPoly, sig: Signature, ascii_tensor: bool = False) -> str:
    if not t:
        return "0"
    sep = ASCII_TENSOR_SIGN if ascii_tensor else TENSOR_SIGN
    terms = sorted(
        t.items(),
        key=lambda kv: (word_sort_key(kv[0][0], sig), word_sort_key(kv[0][1], sig)),
        reverse=True,
    )
    return _format_signed_terms(
        [(c, f"{a}{sep}{b}") for (a, b), c in terms]
    )


def format_scalar(c: Fraction) -> str:
    return str(c)


def parse_tensor(text: str, sig: Signature) -> TensorPoly:
    """Parse tensor text of the form produced by format_tensor (with ⊗)."""
    out = TensorPoly.zero()
    p = _Parser(text, sig)
    sign = 1
    if p.at_symbol("+") or p.at_symbol("-"):
        sign = -1 if p.next()[1] == "-" else 1
    while True:
        term = sign * p.term()
        if not p.at_symbol(TENSOR_SIGN):
            p.error(f"expected {TENSOR_SIGN!r}")
        p.next()
        right = p.word()
        items = list(right.items())
        if len(items) != 1 or items[0][1] != 1:
            p.error("tensor legs must be single words")
        for w, c in term.items():
            out = out + TensorPoly.of_pair(w, items[0][0], c)
        if p.i >= len(p.tokens):
            return out
        if p.at_symbol("+") or p.at_symbol("-"):
            sign = -1 if p.next()[1] == "-" else 1
        else:
            p.error("expected '+' or '-'")


def scalar_to_json(c: Fraction) -> str:
    return str(c)


def poly_to_json(p: Poly, sig: Signature) -> list[dict]:
    terms = sorted(p.items(), key=lambda t: word_sort_key(t[0], sig), reverse=True)
    return [{"coeff": str(c), "word": str(w)} for w, c in terms]


def poly_from_json(data: list[dict], sig: Signature) -> Poly:
    out = Poly.zero()
    for entry in data:
        out = out + Poly.of_word(
            parse_word(entry["word"], sig), Fraction(entry["coeff"])
        )
    return out


def tensor_to_json(t: TensorPoly, sig: Signature) -> list[dict]:
    terms = sorted(
        t.items(),
        key=lambda kv: (word_sort_key(kv[0][0], sig), word_sort_key(kv[0][1], sig)),
        reverse=True,
    )
    return [
        {"coeff": str(c), "left": str(a), "right": str(b)} for (a, b), c in terms
    ]
