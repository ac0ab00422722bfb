"""Left counital Hopf structure on the free Rota-Baxter system.

The coproduct is defined on basis words by recursion: the unit maps to
1 (x) 1, a generator x to 1 (x) x + x (x) 1, an operator word Q(w) to
R(w) (x) 1 plus Q applied to the right leg of the coproduct of w (here R
is the highest-ranked operator regardless of Q), and products of primes
multiply legwise.  The counit picks the coefficient of the unit word.
This makes the algebra a connected graded left counital bialgebra; the
right antipode is obtained degree by degree from the connectedness
slice.  The counit is only a left counit: applying it to the right leg
of the coproduct of S(1) yields R(1), not S(1).
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .algebra import Poly, TensorPoly, as_scalar
from .rewriting import basis_words, diamond, diamond_poly, is_rbs_word, NotBasisWordError
from .terms import UNIT, Generator, OpApp, Signature, Word


class ConnectednessError(RuntimeError):
    """The unit slice of a coproduct is not exactly 1 (x) w.

    This would contradict connectedness of the grading and makes the
    antipode recursion unsound, so it aborts loudly.
    """


def unit_map(c) -> Poly:
    """k -> H, sending a scalar to that multiple of the unit word."""
    return Poly.of_word(UNIT, as_scalar(c))


def counit(p: Poly) -> Fraction:
    """Coefficient of the unit word."""
    return p.coeff(UNIT)


@lru_cache(maxsize=None)
def _coproduct_word(sig: Signature, w: Word) -> TensorPoly:
    fs = w.factors
    if not fs:
        return TensorPoly.of_pair(UNIT, UNIT)
    if len(fs) == 1:
        f = fs[0]
        if isinstance(f, Generator):
            return TensorPoly.of_pair(UNIT, w) + TensorPoly.of_pair(w, UNIT)
        assert isinstance(f, OpApp)
        arg = f.arg
        first = TensorPoly.of_pair(Word((OpApp(sig.top_operator, arg),)), UNIT)
        rest = TensorPoly.zero()
        for (a, b), c in _coproduct_word(sig, arg).items():
            rest = rest + TensorPoly.of_pair(a, Word((OpApp(f.op, b),)), c)
        return first + rest
    out = _coproduct_word(sig, Word((fs[0],)))
    for f in fs[1:]:
        out = tensor_diamond(out, _coproduct_word(sig, Word((f,))), sig)
    return out


def coproduct(w: Word, sig: Signature) -> TensorPoly:
    if not is_rbs_word(w):
        raise NotBasisWordError(f"not a basis word: {w}")
    return _coproduct_word(sig, w)


def coproduct_poly(p: Poly, sig: Signature) -> TensorPoly:
    out = TensorPoly.zero()
    for w, c in p.items():
        out = out + c * coproduct(w, sig)
    return out


def tensor_diamond(s: TensorPoly, t: TensorPoly, sig: Signature) -> TensorPoly:
    """Componentwise product: (a (x) b)(c (x) d) = (a<>c) (x) (b<>d)."""
    out = TensorPoly.zero()
    for (a, b), c in s.items():
        for (u, v), d in t.items():
            left = diamond(a, u, sig)
            right = diamond(b, v, sig)
            cd = c * d
            for lw, lc in left.items():
                for rw, rc in right.items():
                    out = out + TensorPoly.of_pair(lw, rw, cd * lc * rc)
    return out


class LinearEndomap:
    """A linear map determined by its values on basis words."""

    def __init__(self, on_word: Callable[[Word], Poly], name: str = ""):
        self.on_word = on_word
        self.name = name

    def __call__(self, p: Poly) -> Poly:
        out = Poly.zero()
        for w, c in p.items():
            out = out + c * self.on_word(w)
        return out

    @classmethod
    def identity(cls) -> "LinearEndomap":
        return cls(Poly.of_word, "id")

    @classmethod
    def unit_counit(cls) -> "LinearEndomap":
        return cls(lambda w: unit_map(1) if w == UNIT else Poly.zero(), "uε")

    def __repr__(self):
        return f"<LinearEndomap {self.name or 'anonymous'}>"


def convolve(f: LinearEndomap, g: LinearEndomap, sig: Signature) -> LinearEndomap:
    """Convolution product: apply the coproduct, map the legs, multiply."""

    def on_word(w: Word) -> Poly:
        out = Poly.zero()
        for (a, b), c in coproduct(w, sig).items():
            out = out + c * diamond_poly(f.on_word(a), g.on_word(b), sig)
        return out

    name = f"({f.name} * {g.name})" if f.name and g.name else ""
    return LinearEndomap(on_word, name)


@lru_cache(maxsize=None)
def _antipode_word(sig: Signature, w: Word) -> Poly:
    if w == UNIT:
        return Poly.of_word(UNIT)
    delta = _coproduct_word(sig, w)
    unit_slice = {b: c for (a, b), c in delta.items() if a == UNIT}
    if unit_slice != {w: Fraction(1)}:
        raise ConnectednessError(
            f"unit slice of the coproduct of {w} is not 1 (x) {w}"
        )
    out = Poly.zero()
    for (a, b), c in delta.items():
        if a == UNIT and b == w:
            continue
        if b.degree >= w.degree:
            raise ConnectednessError(
                f"coproduct of {w} has a non-unit term of full degree"
            )
        out = out + c * diamond_poly(Poly.of_word(a), _antipode_word(sig, b), sig)
    return -out


def antipode(w: Word, sig: Signature) -> Poly:
    """Right antipode: the convolution right inverse of the identity."""
    if not is_rbs_word(w):
        raise NotBasisWordError(f"not a basis word: {w}")
    return _antipode_word(sig, w)


def antipode_poly(p: Poly, sig: Signature) -> Poly:
    out = Poly.zero()
    for w, c in p.items():
        out = out + c * antipode(w, sig)
    return out


def antipode_map(sig: Signature) -> LinearEndomap:
    return LinearEndomap(lambda w: antipode(w, sig), "T")


def graded_slice(p: Poly, n: int) -> Poly:
    """Projection onto the span of basis words of one degree."""
    return Poly({w: c for w, c in p.items() if w.degree == n})


def graded_parts(p: Poly) -> dict[int, Poly]:
    """Decomposition by degree; the parts sum back to the input."""
    parts: dict[int, dict] = {}
    for w, c in p.items():
        parts.setdefault(w.degree, {})[w] = c
    return {n: Poly(d) for n, d in sorted(parts.items())}


def tensor_graded_slice(t: TensorPoly, p: int, q: int) -> TensorPoly:
    return TensorPoly(
        {k: c for k, c in t.items() if k[0].degree == p and k[1].degree == q}
    )


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    def record(self, input_text: str, lhs: str, rhs: str) -> None:
        self.failures.append({"input": input_text, "lhs": lhs, "rhs": rhs})


@dataclass
class HopfReport:
    max_degree: int
    seed: int
    suites: list[SuiteResult]
    informational: dict

    @property
    def passed(self) -> bool:
        return all(not s.failures for s in self.suites)

    @property
    def checks_run(self) -> int:
        return sum(s.checked for s in self.suites)

    def to_json(self, sig: Signature) -> dict:
        return {
            "suite": "hopf",
            "max_degree": self.max_degree,
            "seed": self.seed,
            "passed": self.passed,
            "suites": [
                {"suite": s.suite, "checked": s.checked, "failures": s.failures}
                for s in self.suites
            ],
            "informational": self.informational,
        }


def _triple_expand(
    t: TensorPoly, sig: Signature, left: bool
) -> dict[tuple[Word, Word, Word], Fraction]:
    """Expand one leg of a two-fold tensor with the coproduct."""
    out: dict[tuple[Word, Word, Word], Fraction] = {}
    for (a, b), c in t.items():
        inner = _coproduct_word(sig, a if left else b)
        for (p, q), d in inner.items():
            key = (p, q, b) if left else (a, p, q)
            s = out.get(key, Fraction(0)) + c * d
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def verify_hopf(
    sig: Signature,
    max_degree: int = 3,
    *,
    samples: int = 500,
    random_degree_sum: int = 6,
    seed: int = 0,
    fail_fast: bool = False,
    max_workers: int = 1,
) -> HopfReport:
    """Run the bialgebra, grading, and antipode property suites.

    All suites are exhaustive over basis words within ``max_degree``; one
    extra suite re-checks multiplicativity of the coproduct on seeded
    random pairs of larger degree.  Suites are independent and may run on
    a thread pool; the report order is fixed either way.  Whether the
    antipode is also a left convolution inverse is reported
    informationally, never as pass/fail.
    """
    from .syntax import format_poly, format_tensor, format_word

    words = basis_words(sig, max_degree)
    pairs = [
        (w, v)
        for w in words
        for v in words
        if w.degree + v.degree <= max_degree
    ]

    def fmt_t(t):
        return format_tensor(t, sig)

    def fmt_p(p):
        return format_poly(p, sig)

    def run_delta_multiplicative() -> tuple[SuiteResult, dict]:
        res = SuiteResult("delta_multiplicative")
        for w, v in pairs:
            res.checked += 1
            lhs = coproduct_poly(diamond(w, v, sig), sig)
            rhs = tensor_diamond(coproduct(w, sig), coproduct(v, sig), sig)
            if lhs != rhs:
                res.record(f"w={w}; v={v}", fmt_t(lhs), fmt_t(rhs))
                if fail_fast:
                    break
        return res, {}

    def run_epsilon_multiplicative() -> tuple[SuiteResult, dict]:
        res = SuiteResult("epsilon_multiplicative")
        for w, v in pairs:
            res.checked += 1
            lhs = counit(diamond(w, v, sig))
            rhs = counit(Poly.of_word(w)) * counit(Poly.of_word(v))
            if lhs != rhs:
                res.record(f"w={w}; v={v}", str(lhs), str(rhs))
                if fail_fast:
                    break
        return res, {}

    def run_coassociativity() -> tuple[SuiteResult, dict]:
        res = SuiteResult("coassociativity")
        for w in words:
            res.checked += 1
            delta = coproduct(w, sig)
            lhs = _triple_expand(delta, sig, left=True)
            rhs = _triple_expand(delta, sig, left=False)
            if lhs != rhs:
                res.record(str(w), repr(sorted(lhs.items(), key=str)),
                           repr(sorted(rhs.items(), key=str)))
                if fail_fast:
                    break
        return res, {}

    def run_left_counit() -> tuple[SuiteResult, dict]:
        res = SuiteResult("left_counit")
        for w in words:
            res.checked += 1
            val = Poly.zero()
            for (a, b), c in coproduct(w, sig).items():
                if a == UNIT:
                    val = val + Poly.of_word(b, c)
            if val != Poly.of_word(w):
                res.record(str(w), fmt_p(val), str(w))
                if fail_fast:
                    break
        return res, {}

    def run_right_counit_failure() -> tuple[SuiteResult, dict]:
        # the right counit law is REQUIRED to fail somewhere
        res = SuiteResult("right_counit_failure")
        info: dict = {}
        witness = None
        for w in words:
            res.checked += 1
            val = Poly.zero()
            for (a, b), c in coproduct(w, sig).items():
                if b == UNIT:
                    val = val + Poly.of_word(a, c)
            if val != Poly.of_word(w):
                witness = (w, val)
                break
        if witness is not None:
            info["right_counit_witness"] = {
                "input": format_word(witness[0]),
                "value": fmt_p(witness[1]),
                "expected": format_word(witness[0]),
            }
        elif len(sig.operators) >= 2:
            res.record(
                f"no witness among basis words of degree <= {max_degree}",
                "right counit law holds everywhere",
                "a word with (id (x) counit) of its coproduct != itself",
            )
        else:
            info["right_counit_witness"] = None
        return res, info

    def run_grading_product() -> tuple[SuiteResult, dict]:
        res = SuiteResult("grading_product")
        for w, v in pairs:
            res.checked += 1
            total = w.degree + v.degree
            prod = diamond(w, v, sig)
            if any(m.degree != total for m in prod.words()):
                res.record(f"w={w}; v={v}", fmt_p(prod), f"degree {total}")
                if fail_fast:
                    break
        return res, {}

    def run_grading_coproduct() -> tuple[SuiteResult, dict]:
        res = SuiteResult("grading_coproduct")
        for w in words:
            res.checked += 1
            bad = [
                (a, b)
                for (a, b), _ in coproduct(w, sig).items()
                if a.degree + b.degree != w.degree
            ]
            if bad:
                res.record(str(w), repr(bad), f"leg degrees summing to {w.degree}")
                if fail_fast:
                    break
        return res, {}

    def run_connectedness() -> tuple[SuiteResult, dict]:
        res = SuiteResult("connectedness")
        for w in words:
            if w.degree == 0:
                continue
            res.checked += 1
            unit_slice = tensor_graded_slice(coproduct(w, sig), 0, w.degree)
            if unit_slice != TensorPoly.of_pair(UNIT, w):
                res.record(str(w), fmt_t(unit_slice), f"1 (x) {w}")
                if fail_fast:
                    break
        return res, {}

    def run_right_antipode() -> tuple[SuiteResult, dict]:
        res = SuiteResult("right_antipode")
        conv = convolve(LinearEndomap.identity(), antipode_map(sig), sig)
        for w in words:
            res.checked += 1
            lhs = conv.on_word(w)
            rhs = unit_map(counit(Poly.of_word(w)))
            if lhs != rhs:
                res.record(str(w), fmt_p(lhs), fmt_p(rhs))
                if fail_fast:
                    break
        return res, {"right_antipode": "pass" if not res.failures else "fail"}

    def run_delta_multiplicative_random() -> tuple[SuiteResult, dict]:
        res = SuiteResult("delta_multiplicative_random")
        rng = random.Random(seed)
        pool = basis_words(sig, random_degree_sum)
        by_bound = [
            [w for w in pool if w.degree <= d]
            for d in range(random_degree_sum + 1)
        ]
        for _ in range(samples):
            w = rng.choice(pool)
            v = rng.choice(by_bound[random_degree_sum - w.degree])
            res.checked += 1
            lhs = coproduct_poly(diamond(w, v, sig), sig)
            rhs = tensor_diamond(coproduct(w, sig), coproduct(v, sig), sig)
            if lhs != rhs:
                res.record(f"w={w}; v={v}", fmt_t(lhs), fmt_t(rhs))
                if fail_fast:
                    break
        return res, {}

    runners = [
        run_delta_multiplicative,
        run_epsilon_multiplicative,
        run_coassociativity,
        run_left_counit,
        run_right_counit_failure,
        run_grading_product,
        run_grading_coproduct,
        run_connectedness,
        run_right_antipode,
        run_delta_multiplicative_random,
    ]

    suites: list[SuiteResult] = []
    informational: dict = {}
    if max_workers > 1 and not fail_fast:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(lambda r: r(), runners))
    else:
        outcomes = []
        for runner in runners:
            res, info = runner()
            outcomes.append((res, info))
            if fail_fast and res.failures:
                break
    for res, info in outcomes:
        suites.append(res)
        informational.update(info)

    if len(suites) == len(runners):
        # informational only: is the antipode also a left inverse?
        conv = convolve(antipode_map(sig), LinearEndomap.identity(), sig)
        informational["left_antipode_holds"] = all(
            conv.on_word(w) == unit_map(counit(Poly.of_word(w))) for w in words
        )

    return HopfReport(max_degree, seed, suites, informational)
