"""Exact-rational linear combinations of words and of word pairs.

``Poly`` carries elements of the free operated algebra (and, once
normalized, of the free Rota-Baxter system); ``TensorPoly`` carries
elements of its tensor square.  Coefficients are exact rationals
throughout; there is no floating point anywhere in the kernel.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

from .terms import OpApp, Signature, Word

Scalar = Fraction
ScalarLike = Union[Fraction, int]


def as_scalar(c: ScalarLike) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Finite map word -> rational with no zero values stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Word, ScalarLike] | None = None):
        if terms:
            self._terms = {
                w: as_scalar(c) for w, c in terms.items() if c
            }
        else:
            self._terms = {}

    @classmethod
    def _raw(cls, terms: dict[Word, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def of_word(cls, w: Word, coeff: ScalarLike = 1) -> "Poly":
        c = as_scalar(coeff)
        return cls._raw({w: c} if c else {})

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(w, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "Poly") -> "Poly":
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return Poly._raw(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly._raw({w: -c for w, c in self._terms.items()})

    def __rmul__(self, c: ScalarLike) -> "Poly":
        c = as_scalar(c)
        if not c:
            return Poly.zero()
        return Poly._raw({w: c * v for w, v in self._terms.items()})

    def map_words(self, f: Callable[[Word], "Word | Poly"]) -> "Poly":
        """Linear extension of a map defined on words."""
        out = Poly.zero()
        for w, c in self._terms.items():
            img = f(w)
            if isinstance(img, Word):
                out = out + Poly.of_word(img, c)
            else:
                out = out + c * img
        return out

    def __repr__(self):
        if not self._terms:
            return "<Poly 0>"
        body = " + ".join(f"{c}*{w}" for w, c in sorted(
            self._terms.items(), key=lambda t: str(t[0])))
        return f"<Poly {body}>"


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def scale(c: ScalarLike, p: Poly) -> Poly:
    return as_scalar(c) * p


def concat_mul(p: Poly, q: Poly) -> Poly:
    """Bilinear extension of word concatenation (the free product).

    The result is not normalized with respect to the defining relations.
    """
    out: dict[Word, Fraction] = {}
    for w, c in p.items():
        for v, d in q.items():
            u = w.concat(v)
            s = out.get(u)
            s = c * d if s is None else s + c * d
            if s:
                out[u] = s
            elif u in out:
                del out[u]
    return Poly._raw(out)


def apply_operator_linear(op: str, p: Poly, sig: Signature) -> Poly:
    """Apply an operator to every monomial, wrapping it as a single prime."""
    if not sig.is_operator(op):
        raise ValueError(f"unknown operator {op!r}")
    return Poly._raw({Word((OpApp(op, w),)): c for w, c in p.items()})


class TensorPoly:
    """Finite map (word, word) -> rational with no zero values stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[Word, Word], ScalarLike] | None = None):
        if terms:
            self._terms = {k: as_scalar(c) for k, c in terms.items() if c}
        else:
            self._terms = {}

    @classmethod
    def _raw(cls, terms) -> "TensorPoly":
        t = cls.__new__(cls)
        t._terms = terms
        return t

    @classmethod
    def zero(cls) -> "TensorPoly":
        return cls._raw({})

    @classmethod
    def of_pair(cls, a: Word, b: Word, coeff: ScalarLike = 1) -> "TensorPoly":
        c = as_scalar(coeff)
        return cls._raw({(a, b): c} if c else {})

    def items(self):
        return self._terms.items()

    def coeff(self, a: Word, b: Word) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, TensorPoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return TensorPoly._raw(out)

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly._raw({k: -c for k, c in self._terms.items()})

    def __rmul__(self, c: ScalarLike) -> "TensorPoly":
        c = as_scalar(c)
        if not c:
            return TensorPoly.zero()
        return TensorPoly._raw({k: c * v for k, v in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "<TensorPoly 0>"
        body = " + ".join(
            f"{c}*({a})(x)({b})" for (a, b), c in sorted(
                self._terms.items(), key=lambda t: (str(t[0][0]), str(t[0][1])))
        )
        return f"<TensorPoly {body}>"


def tensor_add(s: TensorPoly, t: TensorPoly) -> TensorPoly:
    return s + t


def tensor_scale(c: ScalarLike, t: TensorPoly) -> TensorPoly:
    return as_scalar(c) * t


def tensor_of(p: Poly, q: Poly) -> TensorPoly:
    """p (x) q, expanded over the word basis."""
    out: dict[tuple[Word, Word], Fraction] = {}
    for w, c in p.items():
        for v, d in q.items():
            out[(w, v)] = c * d
    return TensorPoly._raw(out)


def tensor_map(
    t: TensorPoly,
    left: Callable[[Poly], Poly],
    right: Callable[[Poly], Poly],
) -> TensorPoly:
    """Apply linear endomaps legwise and re-collect the result."""
    out = TensorPoly.zero()
    for (a, b), c in t.items():
        out = out + c * tensor_of(left(Poly.of_word(a)), right(Poly.of_word(b)))
    return out


def poly_identity(p: Poly) -> Poly:
    return p


def operator_on_poly(op: str, sig: Signature) -> Callable[[Poly], Poly]:
    """The linear endomap p -> op(p), for use as a tensor leg."""
    def apply(p: Poly) -> Poly:
        return apply_operator_linear(op, p, sig)

    return apply
