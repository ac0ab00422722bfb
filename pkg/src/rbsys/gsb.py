"""Composition engine for the defining relations.

Intersection compositions come from top-level overlaps of two leading
words; inclusion compositions from one leading word containing the other
at any nesting level.  A composition is trivial when it reduces to zero
with every touched leading word strictly below the ambiguity.  The
verifier instantiates the two relation schemas over bounded-degree
arguments and contexts and checks every composition family that can
occur, so it is a bounded model check of the rewriting system's
confluence, not a symbolic proof.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .algebra import Poly, concat_mul
from .ordering import leading_word, word_sort_key
from .rewriting import (
    ReductionSystem,
    ReductionTrace,
    standard_system,
)
from .terms import (
    STAR,
    OpApp,
    Signature,
    StarWord,
    Word,
    enumerate_star_words,
    enumerate_words,
    find_subword_contexts,
    substitute,
)

INTERSECTION = "intersection"
INCLUSION = "inclusion"


@dataclass(frozen=True)
class MonicElement:
    """A polynomial whose greatest monomial has coefficient one."""

    poly: Poly
    leading: Word

    @classmethod
    def from_poly(cls, p: Poly, sig: Signature) -> "MonicElement":
        lead, c = leading_word(p, sig)
        if c != 1:
            p = (1 / c) * p
        return cls(p, lead)


@dataclass
class CompositionRecord:
    """One composition instance together with its triviality evidence."""

    kind: str
    f: MonicElement
    g: MonicElement
    ambiguity: Word
    composition: Poly
    certificate: Optional[ReductionTrace] = None
    max_leading_seen: Optional[Word] = None


def relation(system: ReductionSystem, op: str, u: Word, v: Word) -> MonicElement:
    """The relation instance  Q(u)Q(v) - remainder  for the given system."""
    rule = system.rules[op]
    lead = Word((OpApp(op, u), OpApp(op, v)))
    head = Word((OpApp(op, Word((OpApp(rule.head_op, u),) + v.factors)),))
    tail = Word((OpApp(op, Word(u.factors + (OpApp(rule.tail_op, v),))),))
    poly = (
        Poly.of_word(lead)
        - Poly.of_word(head, rule.head_coeff)
        - Poly.of_word(tail, rule.tail_coeff)
    )
    return MonicElement(poly, lead)


def instantiate_relations(
    sig: Signature, max_degree: int, system: ReductionSystem | None = None
) -> list[MonicElement]:
    """Both relation schemas at every argument pair of bounded total degree."""
    system = system or standard_system(sig)
    words = enumerate_words(sig, max_degree)
    out: list[MonicElement] = []
    for op in sig.operators:
        for u in words:
            for v in words:
                if u.degree + v.degree <= max_degree:
                    out.append(relation(system, op, u, v))
    return out


def find_intersection_compositions(
    f: MonicElement, g: MonicElement, sig: Signature
) -> list[CompositionRecord]:
    """Overlaps of a suffix of f's leading word with a prefix of g's.

    Overlaps are taken on the top-level factor sequences; nested
    occurrences are inclusion compositions instead.
    """
    ff, gf = f.leading.factors, g.leading.factors
    out: list[CompositionRecord] = []
    for k in range(1, min(len(ff), len(gf)) + 1):
        if ff[len(ff) - k :] != gf[:k]:
            continue
        a = Word(gf[k:])
        b = Word(ff[: len(ff) - k])
        ambiguity = Word(ff + gf[k:])
        comp = concat_mul(f.poly, Poly.of_word(a)) - concat_mul(
            Poly.of_word(b), g.poly
        )
        out.append(CompositionRecord(INTERSECTION, f, g, ambiguity, comp))
    return out


def find_inclusion_compositions(
    f: MonicElement,
    g: MonicElement,
    sig: Signature,
    contexts: Optional[Iterable[StarWord]] = None,
) -> list[CompositionRecord]:
    """All ways g's leading word sits inside f's, one record per context.

    When ``contexts`` is given only those candidates are tried; otherwise
    the occurrences are found by scanning.  The degenerate self-inclusion
    of f in itself at the trivial context is discarded.
    """
    if contexts is None:
        found = find_subword_contexts(f.leading, g.leading)
    else:
        found = [ctx for ctx in contexts if ctx.plug(g.leading) == f.leading]
    out: list[CompositionRecord] = []
    trivial_ctx = StarWord(Word((STAR,)))
    for ctx in found:
        if ctx == trivial_ctx and f.poly == g.poly:
            continue
        comp = f.poly - substitute(ctx, g.poly)
        out.append(CompositionRecord(INCLUSION, f, g, f.leading, comp))
    return out


def check_trivial(
    rec: CompositionRecord,
    system: ReductionSystem,
    *,
    trace: bool = False,
) -> bool:
    """Reduce the composition; trivial iff it reaches zero with every
    matched leading word strictly below the ambiguity.

    In greatest-first elimination the matched words decrease strictly, so
    the bound only needs the composition's own leading word; the traced
    mode records the whole certificate and re-checks it step by step.
    """
    sig = system.sig
    comp = rec.composition
    if not comp:
        rec.certificate = ReductionTrace((), Poly.zero())
        rec.max_leading_seen = None
        return True
    lead, _ = leading_word(comp, sig)
    rec.max_leading_seen = lead
    bound = word_sort_key(rec.ambiguity, sig)
    if not word_sort_key(lead, sig) < bound:
        return False
    if trace:
        nf, cert = system.normal_form_traced(comp)
        rec.certificate = cert
        if any(
            not word_sort_key(step.word, sig) < bound for step in cert.steps
        ):
            return False
        return not nf
    return not system.normal_form(comp)


def _contains(host: Word, pattern_factors: tuple) -> bool:
    hf = host.factors
    k = len(pattern_factors)
    n = len(hf)
    for i in range(n - k + 1):
        if hf[i : i + k] == pattern_factors:
            return True
    for f in hf:
        if isinstance(f, OpApp) and _contains(f.arg, pattern_factors):
            return True
    return False


def irreducibles(
    relations: Sequence[MonicElement], sig: Signature, max_degree: int
) -> list[Word]:
    """Words of bounded degree containing no leading word of ``relations``."""
    patterns = [m.leading.factors for m in relations]
    out = []
    for w in enumerate_words(sig, max_degree):
        if not any(_contains(w, p) for p in patterns):
            out.append(w)
    return out


@dataclass(frozen=True)
class FamilySpec:
    """One ambiguity family: either a chain Q(u)Q(v)Q(w), or a pattern
    Q'(a)Q'(b) planted inside one argument of a Q-relation."""

    name: str
    kind: str
    outer: str
    inner: str
    arg_pos: int  # 0 for chains, else 1 (first argument) or 2 (second)


def family_specs(sig: Signature) -> list[FamilySpec]:
    specs: list[FamilySpec] = []
    for q in sig.operators:
        specs.append(FamilySpec(f"{q}{q}-chain", INTERSECTION, q, q, 0))
        inner_order = [q] + [r for r in sig.operators if r != q]
        for r in inner_order:
            for pos, side in ((1, "left"), (2, "right")):
                specs.append(
                    FamilySpec(
                        f"{r}{r}-inside-{q}{q}-{side}", INCLUSION, q, r, pos
                    )
                )
    return specs


@dataclass
class FamilyFailure:
    u: Word
    v: Word
    w: Word
    pi: Optional[StarWord]
    residual: Poly


@dataclass
class FamilyResult:
    family: str
    instances_checked: int = 0
    failures: list[FamilyFailure] = field(default_factory=list)


@dataclass
class GsbReport:
    uvw_degree: int
    pi_degree: int
    families: list[FamilyResult]

    @property
    def passed(self) -> bool:
        return all(not fam.failures for fam in self.families)

    @property
    def instances_checked(self) -> int:
        return sum(fam.instances_checked for fam in self.families)

    def to_json(self, sig: Signature) -> dict:
        from .syntax import format_poly, format_word

        return {
            "suite": "gsb",
            "bounds": {"uvw": self.uvw_degree, "pi": self.pi_degree},
            "passed": self.passed,
            "families": [
                {
                    "family": fam.family,
                    "instances_checked": fam.instances_checked,
                    "failures": [
                        {
                            "u": format_word(fl.u),
                            "v": format_word(fl.v),
                            "w": format_word(fl.w),
                            "pi": None if fl.pi is None else format_word(fl.pi),
                            "residual": format_poly(fl.residual, sig),
                        }
                        for fl in fam.failures
                    ],
                }
                for fam in self.families
            ],
        }


def _run_family(
    spec: FamilySpec,
    sig: Signature,
    system: ReductionSystem,
    words: list[Word],
    pis: list[StarWord],
    fail_fast: bool,
) -> FamilyResult:
    result = FamilyResult(spec.name)

    def handle(records, u, v, w, pi) -> bool:
        for rec in records:
            result.instances_checked += 1
            if not check_trivial(rec, system):
                residual = system.normal_form(rec.composition)
                result.failures.append(FamilyFailure(u, v, w, pi, residual))
                if fail_fast:
                    return False
        return True

    if spec.kind == INTERSECTION:
        for u in words:
            for v in words:
                for w in words:
                    f = relation(system, spec.outer, u, v)
                    g = relation(system, spec.outer, v, w)
                    if not handle(
                        find_intersection_compositions(f, g, sig), u, v, w, None
                    ):
                        return result
    else:
        for a in words:
            for b in words:
                pattern = Word((OpApp(spec.inner, a), OpApp(spec.inner, b)))
                g = relation(system, spec.inner, a, b)
                for pi in pis:
                    planted = pi.plug(pattern)
                    for c in words:
                        if spec.arg_pos == 1:
                            f = relation(system, spec.outer, planted, c)
                            u, v, w = a, b, c
                        else:
                            f = relation(system, spec.outer, c, planted)
                            u, v, w = c, a, b
                        if not handle(
                            find_inclusion_compositions(f, g, sig), u, v, w, pi
                        ):
                            return result
    return result


def verify_gsb(
    sig: Signature,
    uvw_degree: int = 1,
    pi_degree: int = 1,
    *,
    system: ReductionSystem | None = None,
    fail_fast: bool = False,
    max_workers: int = 1,
) -> GsbReport:
    """Check triviality of every composition family at bounded degree.

    Arguments of the relation schemas range over all words of degree at
    most ``uvw_degree`` and planting contexts over star words of degree at
    most ``pi_degree``.  Failures are report content, not exceptions.
    """
    if uvw_degree < 0 or pi_degree < 0:
        raise ValueError("degree bounds must be >= 0")
    system = system or standard_system(sig)
    words = enumerate_words(sig, uvw_degree)
    pis = enumerate_star_words(sig, pi_degree)
    specs = family_specs(sig)

    def run(spec: FamilySpec) -> FamilyResult:
        return _run_family(spec, sig, system, words, pis, fail_fast)

    if max_workers > 1 and not fail_fast:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(run, specs))
    else:
        results = []
        for spec in specs:
            res = run(spec)
            results.append(res)
            if fail_fast and res.failures:
                break
    return GsbReport(uvw_degree, pi_degree, results)


def mutated_system(sig: Signature, op: str, which: str) -> ReductionSystem:
    """The standard system with one relation schema's sign(s) flipped."""
    return ReductionSystem.standard(sig).mutated(op, which)
