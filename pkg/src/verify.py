#!/usr/bin/env python3
"""
Verification Suites

Each suite turns one statement about points and generalized points of monoids
into an exhaustive check over a Corpus. Implications are checked as
implications (hypothesis filter, then conclusion), biconditionals both ways.

Suites never stop at a violation: every instance is checked, violations are
collected with a serialized witness and re-run through the definition-literal
checkers (the `revalidated` flag). Work fans out over a process pool; shard k
of n takes the instances whose stream position is k mod n, and aggregation
sorts violations canonically so the report does not depend on the shard count.
"""

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from contextlib import contextmanager
from itertools import combinations, islice
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, Field

from constructions import (
    GP_KIND,
    POINT_KIND,
    ClassPredicate,
    canonical_point,
    class_predicate,
    enumerate_gp_morphisms,
    enumerate_point_morphisms,
    equalizer_gp,
    equalizer_point,
    find_schreier_partner,
    map_F,
    map_G,
    product_gp,
    product_point,
    pullback_gp,
    pullback_point,
    terminal_gp,
    terminal_point,
    witness_g,
)
from corpus import Corpus
from monoid_core import Hom, compose
from monoid_enumeration import are_isomorphic
from points import (
    CheckResult,
    GeneralizedPoint,
    Point,
    is_regular_schreier_epi,
    is_regular_schreier_epi_literal,
    is_schreier_epi,
    is_schreier_epi_literal,
    is_schreier_gp,
    is_schreier_gp_literal,
    is_schreier_point,
    is_schreier_point_literal,
    is_strong_gp,
    is_strong_gp_literal,
    is_strong_point,
    representatives,
    representatives_literal,
)
from serialization import dumps, gp_to_dict, hom_to_dict, point_to_dict

logger = logging.getLogger(__name__)

Shard = Tuple[int, int]


class UnknownSuiteError(ValueError):
    """Raised for a suite name that is not in the manifest"""


class Report(BaseModel):
    """Outcome of one suite run"""
    suite: str
    params: Dict[str, Any] = Field(default_factory=dict)
    checked: int = 0
    violations: List[Dict[str, Any]] = Field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, include_timing: bool = True) -> Dict:
        payload = self.model_dump()
        payload["passed"] = self.passed
        if not include_timing:
            payload.pop("elapsed_ms")
        return payload

    def to_json(self, include_timing: bool = True) -> str:
        return dumps(self.to_dict(include_timing))


class Tally:
    """Partial result of one shard"""

    def __init__(self):
        self.checked = 0
        self.violations: List[Dict] = []
        self.notes: Counter = Counter()

    def violation(self, check: str, instance: Dict, witness: Any = None, revalidated: bool = True):
        self.violations.append({
            "check": check,
            "instance": instance,
            "witness": witness,
            "revalidated": bool(revalidated),
        })

    def merge(self, other: "Tally"):
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.notes.update(other.notes)


@contextmanager
def _instance(tally: Tally, describe: Callable[[], Dict]):
    """Record an unexpected exception as a violation and carry on"""
    try:
        yield
    except Exception as e:
        logger.error(f"❌ Instance check raised {type(e).__name__}: {e}")
        tally.violation("exception", describe(), {"error": f"{type(e).__name__}: {e}"}, revalidated=False)


def _sharded(items: Iterable, shard: Shard) -> Iterator:
    k, n = shard
    for position, item in enumerate(items):
        if position % n == k:
            yield item


def _describe(obj) -> Dict:
    if isinstance(obj, Point):
        return {"point": point_to_dict(obj)}
    return {"gp": gp_to_dict(obj)}


def _as_gp(obj) -> GeneralizedPoint:
    return obj.as_generalized() if isinstance(obj, Point) else obj


def _surjections_into(corpus: Corpus, b: int) -> Iterator[Hom]:
    for i in range(len(corpus)):
        yield from corpus.surjections(i, b)


# --- implication suites ------------------------------------------------------

def _check_thm_2_4(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()
    for gp in _sharded(corpus.generalized_points(), shard):
        conclusion: Optional[CheckResult] = None
        for x in _surjections_into(corpus, corpus.index_of(gp.f.cod)):
            tally.checked += 1
            with _instance(tally, lambda: {"gp": gp_to_dict(gp), "x": hom_to_dict(x)}):
                pulled = pullback_gp(gp, x)
                if not pulled.squares_commute():
                    tally.violation("pullback-squares", {"gp": gp_to_dict(gp), "x": hom_to_dict(x)})
                    continue
                if not is_strong_gp(pulled.result):
                    continue
                tally.notes["hypothesis_held"] += 1
                if conclusion is None:
                    conclusion = is_strong_gp(gp)
                if not conclusion:
                    revalidated = is_strong_gp_literal(pulled.result).holds and not is_strong_gp_literal(gp).holds
                    tally.violation("implication", {"gp": gp_to_dict(gp), "x": hom_to_dict(x)},
                                    conclusion.witness, revalidated)
    return tally


def _check_prop_2_5(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()
    for p in _sharded(corpus.points(), shard):
        hypothesis = is_strong_point(p).holds
        a, b = corpus.index_of(p.f.dom), corpus.index_of(p.f.cod)
        for c in range(len(corpus)):
            for h in corpus.homs(b, c):
                for g in corpus.homs(c, a):
                    if compose(g, h) != p.s:
                        continue
                    tally.checked += 1
                    if not hypothesis:
                        continue
                    tally.notes["hypothesis_held"] += 1
                    describe = lambda: {"point": point_to_dict(p), "h": hom_to_dict(h), "g": hom_to_dict(g)}
                    with _instance(tally, describe):
                        gp = GeneralizedPoint(p.f, g)
                        conclusion = is_strong_gp(gp)
                        if not conclusion:
                            revalidated = (is_strong_gp_literal(p.as_generalized()).holds
                                           and not is_strong_gp_literal(gp).holds)
                            tally.violation("implication", describe(), conclusion.witness, revalidated)
    return tally


def _check_cor_2_6(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()
    for gp in _sharded(corpus.generalized_points(), shard):
        tally.checked += 1
        with _instance(tally, lambda: _describe(gp)):
            point = canonical_point(gp)
            if not is_strong_point(point):
                continue
            tally.notes["hypothesis_held"] += 1
            conclusion = is_strong_gp(gp)
            if not conclusion:
                revalidated = (is_strong_gp_literal(point.as_generalized()).holds
                               and not is_strong_gp_literal(gp).holds)
                tally.violation("implication", _describe(gp), conclusion.witness, revalidated)
    return tally


# --- closure conditions ------------------------------------------------------

def _member_pairs(stream: Iterable, cls: ClassPredicate) -> List[Tuple]:
    """All pairs (i <= j) of class members in stream order"""
    members, pairs = [], []
    for obj in stream:
        if not cls(obj):
            continue
        members.append(obj)
        j = len(members) - 1
        pairs.extend((members[i], members[j]) for i in range(j + 1))
    return pairs


def _capped(pairs: List[Tuple], cap: Optional[int]) -> Tuple[List[Tuple], int]:
    """The first `cap` pairs (all of them for None) and how many were left out"""
    if cap is None or cap >= len(pairs):
        return pairs, 0
    return pairs[:cap], len(pairs) - cap


def _literal_twin(cls: ClassPredicate) -> ClassPredicate:
    try:
        return class_predicate(cls.name, cls.kind, literal=True)
    except ValueError:
        return cls


def _check_conditions(cls: ClassPredicate, corpus: Corpus, shard: Shard = (0, 1),
                      product_pairs: Optional[int] = None, equalizer_pairs: Optional[int] = None,
                      morphism_cap: int = 12, **_options) -> Tally:
    """
    Per-instance closure checks for a class of points or generalized points:
    (a) pullback stability along every hom into the base, (b) terminal object,
    binary products and equalizers, (c) every member is strong, and for
    generalized points (d) membership agrees with that of the canonical point.

    product_pairs and equalizer_pairs cap the member pairs used for (b); None
    means every pair. Pairs left out are counted in the
    product_pairs_skipped and equalizer_pairs_skipped notes.
    """
    tally = Tally()
    is_point_class = cls.kind == POINT_KIND
    stream = corpus.points if is_point_class else corpus.generalized_points
    literal = _literal_twin(cls)

    for obj in _sharded(stream(), shard):
        with _instance(tally, lambda: _describe(obj)):
            member = cls(obj)
            if not is_point_class:
                tally.checked += 1
                canonical = canonical_point(obj).as_generalized()
                canonical_member = cls(canonical)
                if member != canonical_member:
                    revalidated = literal(obj) != literal(canonical)
                    tally.violation("condition-d", _describe(obj),
                                    {"member": member, "canonical_member": canonical_member}, revalidated)
            if not member:
                continue
            tally.notes["members"] += 1

            tally.checked += 1
            strong = is_strong_gp(_as_gp(obj))
            if not strong:
                tally.violation("condition-c", _describe(obj), strong.witness,
                                not is_strong_gp_literal(_as_gp(obj)).holds)

            for x in corpus.homs_into(corpus.index_of(obj.f.cod)):
                tally.checked += 1
                pulled = pullback_point(obj, x) if is_point_class else pullback_gp(obj, x).result
                if not cls(pulled):
                    instance = dict(_describe(obj), x=hom_to_dict(x))
                    tally.violation("condition-a", instance, _describe(pulled), not literal(pulled))

    if shard[0] == 0:
        tally.checked += 1
        terminal = terminal_point() if is_point_class else terminal_gp()
        if not cls(terminal):
            tally.violation("condition-b-terminal", _describe(terminal), None, not literal(terminal))

    pairs = _member_pairs(stream(), cls)
    product_list, product_skipped = _capped(pairs, product_pairs)
    equalizer_list, equalizer_skipped = _capped(pairs, equalizer_pairs)
    if shard[0] == 0:
        if product_skipped:
            tally.notes["product_pairs_skipped"] += product_skipped
            logger.warning(f"⚠️  {cls.name}: products checked on {len(product_list)} of {len(pairs)} member pairs")
        if equalizer_skipped:
            tally.notes["equalizer_pairs_skipped"] += equalizer_skipped
            logger.warning(f"⚠️  {cls.name}: equalizers checked on {len(equalizer_list)} of {len(pairs)} member pairs")

    for first, second in _sharded(product_list, shard):
        tally.checked += 1
        with _instance(tally, lambda: {"first": _describe(first), "second": _describe(second)}):
            combined = product_point(first, second) if is_point_class else product_gp(first, second)
            if not cls(combined):
                tally.violation("condition-b-product", {"first": _describe(first), "second": _describe(second)},
                                None, not literal(combined))

    morphisms_between = enumerate_point_morphisms if is_point_class else enumerate_gp_morphisms
    for source, target in _sharded(equalizer_list, shard):
        morphisms = list(islice(morphisms_between(source, target), morphism_cap + 1))
        if len(morphisms) > morphism_cap:
            tally.notes["morphism_lists_capped"] += 1
            morphisms = morphisms[:morphism_cap]
        for m1, m2 in combinations(morphisms, 2):
            tally.checked += 1
            describe = lambda: {
                "source": _describe(source),
                "target": _describe(target),
                "alphas": [list(m1.alpha.mapping), list(m2.alpha.mapping)],
                "betas": [list(m1.beta.mapping), list(m2.beta.mapping)],
                "gammas": [list(m1.gamma.mapping), list(m2.gamma.mapping)],
            }
            with _instance(tally, describe):
                if is_point_class:
                    equalized = equalizer_point(m1, m2)
                else:
                    eq = equalizer_gp(m1, m2)
                    if not eq.is_generalized_point:
                        tally.notes["equalizer_not_gp"] += 1
                        continue
                    equalized = eq.generalized_point
                if not cls(equalized):
                    tally.violation("condition-b-equalizer", describe(), _describe(equalized), not literal(equalized))
    return tally


def _conditions_runner(class_name: str, kind: str) -> Callable[..., Tally]:
    def runner(corpus: Corpus, shard: Shard = (0, 1), **options) -> Tally:
        return _check_conditions(class_predicate(class_name, kind), corpus, shard, **options)
    return runner


# --- correspondence suites -------------------------------------------------

def _check_thm_3_4(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()
    S, T = class_predicate("schreier-point"), class_predicate("schreier-gp")
    GF_T, FG_S = map_G(map_F(T)), map_F(map_G(S))
    S_lit = class_predicate("schreier-point", literal=True)
    T_lit = class_predicate("schreier-gp", literal=True)
    GF_T_lit, FG_S_lit = map_G(map_F(T_lit)), map_F(map_G(S_lit))

    for gp in _sharded(corpus.generalized_points(), shard):
        tally.checked += 1
        tally.notes["split_gps"] += int(gp.is_split())
        with _instance(tally, lambda: _describe(gp)):
            round_trip, direct = GF_T(gp), T(gp)
            if round_trip != direct:
                tally.violation("GF(T)=T", _describe(gp), {"GF(T)": round_trip, "T": direct},
                                GF_T_lit(gp) != T_lit(gp))
    for p in _sharded(corpus.points(), shard):
        tally.checked += 1
        with _instance(tally, lambda: _describe(p)):
            round_trip, direct = FG_S(p), S(p)
            if round_trip != direct:
                tally.violation("FG(S)=S", _describe(p), {"FG(S)": round_trip, "S": direct},
                                FG_S_lit(p) != S_lit(p))
    return tally


def _biconditional(tally: Tally, gp: GeneralizedPoint, require_both: bool = False):
    lhs = is_schreier_gp(gp)
    rhs = is_schreier_point(canonical_point(gp))
    broken = bool(lhs) != bool(rhs) or (require_both and not (lhs and rhs))
    if broken:
        lhs_lit = is_schreier_gp_literal(gp).holds
        rhs_lit = is_schreier_point_literal(canonical_point(gp)).holds
        revalidated = lhs_lit != rhs_lit or (require_both and not (lhs_lit and rhs_lit))
        tally.violation("biconditional", _describe(gp),
                        {"schreier_gp": lhs.to_dict(), "canonical_schreier_point": rhs.to_dict()}, revalidated)


def _check_thm_4_5(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()
    for gp in _sharded(corpus.generalized_points(), shard):
        tally.checked += 1
        tally.notes["split" if gp.is_split() else "enumerated"] += 1
        with _instance(tally, lambda: _describe(gp)):
            _biconditional(tally, gp)
    for f in _sharded(corpus.surjections_all(), shard):
        with _instance(tally, lambda: {"f": hom_to_dict(f)}):
            built = witness_g(f)
            if built is None:
                continue
            tally.checked += 1
            tally.notes["witness_built"] += 1
            _biconditional(tally, built, require_both=True)
    return tally


def _partner_candidates(corpus: Corpus, a: int, cap: int) -> Iterator[Hom]:
    for c, C in enumerate(corpus.monoids):
        if C.order <= cap:
            yield from corpus.homs(c, a)


def _check_witness(corpus: Corpus, shard: Shard, via_canonical_point: bool,
                   max_c_order: Optional[int]) -> Tally:
    tally = Tally()

    def schreier(gp: GeneralizedPoint) -> bool:
        return is_schreier_point(canonical_point(gp)).holds if via_canonical_point else is_schreier_gp(gp).holds

    def schreier_literal(gp: GeneralizedPoint) -> bool:
        if via_canonical_point:
            return is_schreier_point_literal(canonical_point(gp)).holds
        return is_schreier_gp_literal(gp).holds

    for f in _sharded(corpus.surjections_all(), shard):
        tally.checked += 1
        describe = lambda: {"f": hom_to_dict(f)}
        with _instance(tally, describe):
            cap = max_c_order or f.dom.order
            regular = is_regular_schreier_epi(f)
            if regular:
                tally.notes["regular"] += 1
            elif is_schreier_epi(f):
                tally.notes["schreier_not_regular"] += 1
            if f.is_identity():
                tally.notes["identities"] += 1

            partner = find_schreier_partner(f, _partner_candidates(corpus, corpus.index_of(f.dom), cap),
                                            via_canonical_point=via_canonical_point)
            if partner is not None and not regular:
                revalidated = not is_regular_schreier_epi_literal(f).holds and schreier_literal(partner)
                tally.violation("if", {"f": hom_to_dict(f), "g": hom_to_dict(partner.g)},
                                regular.witness, revalidated)
            if not regular:
                continue

            built = witness_g(f)
            if built is None or not schreier(built):
                revalidated = is_regular_schreier_epi_literal(f).holds and (built is None or not schreier_literal(built))
                tally.violation("only-if-witness", describe(), None, revalidated)
                continue
            if partner is None and built.g.dom.order <= cap:
                in_corpus = any(are_isomorphic(built.g.dom, C) for C in corpus.monoids)
                if not in_corpus:
                    tally.notes["witness_outside_corpus"] += 1
                    continue
                tally.violation("only-if-oracle", describe(), None, is_regular_schreier_epi_literal(f).holds)
    return tally


def _check_thm_4_6(corpus: Corpus, shard: Shard = (0, 1), max_c_order: Optional[int] = None, **_options) -> Tally:
    return _check_witness(corpus, shard, False, max_c_order)


def _check_cor_4_7(corpus: Corpus, shard: Shard = (0, 1), max_c_order: Optional[int] = None, **_options) -> Tally:
    return _check_witness(corpus, shard, True, max_c_order)


def _check_remark_4_4(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()

    def check(gp: GeneralizedPoint):
        tally.checked += 1
        if not is_schreier_gp(gp):
            return
        tally.notes["schreier"] += 1
        strong = is_strong_gp(gp)
        if not strong:
            revalidated = is_schreier_gp_literal(gp).holds and not is_strong_gp_literal(gp).holds
            tally.violation("implication", _describe(gp), strong.witness, revalidated)

    for gp in _sharded(corpus.generalized_points(), shard):
        with _instance(tally, lambda: _describe(gp)):
            check(gp)
    for f in _sharded(corpus.surjections_all(), shard):
        with _instance(tally, lambda: {"f": hom_to_dict(f)}):
            built = witness_g(f)
            if built is not None:
                tally.notes["witness_built"] += 1
                check(built)
    return tally


def _agree(tally: Tally, checker: str, instance: Callable[[], Dict], optimized: CheckResult, literal: CheckResult):
    tally.checked += 1
    if optimized != literal:
        tally.violation("disagreement", dict(instance(), checker=checker),
                        {"optimized": optimized.to_dict(), "literal": literal.to_dict()})


def _check_checker_agreement(corpus: Corpus, shard: Shard = (0, 1), **_options) -> Tally:
    tally = Tally()
    for p in _sharded(corpus.points(), shard):
        describe = lambda: _describe(p)
        with _instance(tally, describe):
            _agree(tally, "schreier-point", describe, is_schreier_point(p), is_schreier_point_literal(p))
            _agree(tally, "strong-point", describe, is_strong_point(p), is_strong_gp_literal(p.as_generalized()))
    for gp in _sharded(corpus.generalized_points(), shard):
        describe = lambda: _describe(gp)
        with _instance(tally, describe):
            _agree(tally, "schreier-gp", describe, is_schreier_gp(gp), is_schreier_gp_literal(gp))
            _agree(tally, "strong-gp", describe, is_strong_gp(gp), is_strong_gp_literal(gp))
    for f in _sharded(corpus.surjections_all(), shard):
        describe = lambda: {"f": hom_to_dict(f)}
        with _instance(tally, describe):
            for b in f.cod.elements:
                fast, slow = representatives(f, b), representatives_literal(f, b)
                _agree(tally, f"representatives[{b}]", describe,
                       CheckResult(True, sorted(fast)), CheckResult(True, sorted(slow)))
            _agree(tally, "schreier-epi", describe, is_schreier_epi(f), is_schreier_epi_literal(f))
            _agree(tally, "regular-schreier", describe,
                   is_regular_schreier_epi(f), is_regular_schreier_epi_literal(f))
    return tally


# --- manifest ------------------------------------------------------------------

SUITES: Dict[str, Dict[str, Any]] = {
    "thm-2-4": {
        "statement": "If Ker(π₂) and g×1 are jointly strongly epic after pulling (f, g) back along a "
                     "surjection x, then Ker(f) and g are jointly strongly epic",
        "runner": _check_thm_2_4,
        "max_order": 3,
        "touches": ["pullback_gp", "pullback", "is_strong_gp", "jointly_strongly_epic", "generated_submonoid",
                    "kernel", "image"],
    },
    "prop-2-5": {
        "statement": "If Ker(f) and s are jointly strongly epic and s = g∘h, then (f, g) is strong",
        "runner": _check_prop_2_5,
        "max_order": 3,
        "touches": ["is_strong_point", "is_strong_gp", "compose"],
    },
    "cor-2-6": {
        "statement": "If ⟨g, 1_C⟩ and Ker(π₂) are jointly strongly epic, then (f, g) is strong",
        "runner": _check_cor_2_6,
        "max_order": 3,
        "touches": ["canonical_point", "canonical_cone", "pullback", "is_strong_point", "is_strong_gp"],
    },
    "conditions-schreier-point": {
        "statement": "Schreier points are pullback stable, closed under finite limits and strong",
        "runner": _conditions_runner("schreier-point", POINT_KIND),
        "max_order": 3,
        "touches": ["pullback_point", "product_point", "equalizer_point", "terminal_point", "is_schreier_point",
                    "enumerate_point_morphisms", "class_predicate"],
    },
    "conditions-schreier-gp": {
        "statement": "Schreier generalized points are pullback stable, closed under finite limits, strong, "
                     "and detected by their canonical point",
        "runner": _conditions_runner("schreier-gp", GP_KIND),
        "max_order": 3,
        "touches": ["pullback_gp", "product_gp", "product_hom", "product", "equalizer_gp", "terminal_gp",
                    "canonical_point", "is_schreier_gp", "enumerate_gp_morphisms"],
    },
    "conditions-F-schreier-gp": {
        "statement": "F(Schreier generalized points) satisfies the closure conditions for points",
        "runner": _conditions_runner("F(schreier-gp)", POINT_KIND),
        "max_order": 3,
        "touches": ["map_F", "as_generalized", "pullback_point", "product_point", "equalizer_point"],
    },
    "conditions-G-schreier-point": {
        "statement": "G(Schreier points) satisfies the closure conditions for generalized points",
        "runner": _conditions_runner("G(schreier-point)", GP_KIND),
        "max_order": 3,
        "touches": ["map_G", "canonical_point", "pullback_gp", "product_gp", "equalizer_gp"],
    },
    "thm-3-4": {
        "statement": "GF(T) = T on generalized points and FG(S) = S on points for the Schreier classes",
        "runner": _check_thm_3_4,
        "max_order": 4,
        "touches": ["map_F", "map_G", "canonical_point", "is_schreier_gp", "is_schreier_point"],
    },
    "thm-4-5": {
        "statement": "(f, g) is a Schreier generalized point iff its canonical point is a Schreier point",
        "runner": _check_thm_4_5,
        "max_order": 4,
        "touches": ["is_schreier_gp", "is_schreier_point", "canonical_point", "witness_g"],
    },
    "thm-4-6": {
        "statement": "f is a regular Schreier epimorphism iff some g makes (f, g) a Schreier generalized point",
        "runner": _check_thm_4_6,
        "max_order": 4,
        "touches": ["is_regular_schreier_epi", "is_schreier_epi", "witness_g", "find_schreier_partner",
                    "is_schreier_gp"],
    },
    "cor-4-7": {
        "statement": "f is a regular Schreier epimorphism iff some g with fg surjective has a Schreier "
                     "canonical point",
        "runner": _check_cor_4_7,
        "max_order": 4,
        "touches": ["is_regular_schreier_epi", "witness_g", "find_schreier_partner", "canonical_point",
                    "is_schreier_point"],
    },
    "remark-4-4": {
        "statement": "Every Schreier generalized point is strong",
        "runner": _check_remark_4_4,
        "max_order": 4,
        "touches": ["is_schreier_gp", "is_strong_gp", "witness_g"],
    },
    "checker-agreement": {
        "statement": "Vectorized checkers agree with definition-literal scans",
        "runner": _check_checker_agreement,
        "max_order": 4,
        "touches": ["is_schreier_point", "is_schreier_point_literal", "is_schreier_gp", "is_schreier_gp_literal",
                    "representatives", "representatives_literal", "representative_set", "is_schreier_epi",
                    "is_schreier_epi_literal", "is_regular_schreier_epi", "is_regular_schreier_epi_literal",
                    "is_strong_gp", "is_strong_gp_literal"],
    },
}

_CONDITIONS_PREFIX = "conditions:"


def suite_names() -> List[str]:
    return list(SUITES)


def manifest() -> Dict[str, Any]:
    return {
        "suites": [
            {
                "name": name,
                "statement": entry["statement"],
                "default_max_order": entry["max_order"],
                "touches": entry["touches"],
            }
            for name, entry in SUITES.items()
        ]
    }


def conditions_suite_name(class_name: str, kind: str) -> str:
    return f"{_CONDITIONS_PREFIX}{kind}:{class_name}"


def _resolve_runner(name: str) -> Callable[..., Tally]:
    if name in SUITES:
        return SUITES[name]["runner"]
    if name.startswith(_CONDITIONS_PREFIX):
        kind, _, class_name = name[len(_CONDITIONS_PREFIX):].partition(":")
        class_predicate(class_name, kind)
        return _conditions_runner(class_name, kind)
    raise UnknownSuiteError(f"unknown suite '{name}'; known: {', '.join(SUITES)}")


def _run_shard(name: str, params: Dict, cache_dir: Optional[str], shard: Shard, options: Dict) -> Tally:
    corpus = Corpus.from_params(params, cache_dir)
    return _resolve_runner(name)(corpus, shard, **options)


def _run(name: str, runner: Callable[..., Tally], corpus: Corpus, jobs: int,
         options: Dict, cache_dir: Optional[str]) -> Report:
    logger.info(f"🔍 Running suite {name} over {len(corpus)} monoids with {jobs} job(s)")
    start = time.perf_counter()
    if jobs <= 1:
        tally = runner(corpus, (0, 1), **options)
    else:
        tally = Tally()
        params = corpus.params()
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            future_to_shard = {
                executor.submit(_run_shard, name, params, cache_dir, (k, jobs), options): k
                for k in range(jobs)
            }
            for future in as_completed(future_to_shard):
                k = future_to_shard[future]
                try:
                    tally.merge(future.result())
                except Exception as e:
                    logger.error(f"❌ Shard {k}/{jobs} of {name} failed: {e}")
                    tally.violation("shard-failed", {"shard": [k, jobs]}, {"error": str(e)}, revalidated=False)
    elapsed_ms = round((time.perf_counter() - start) * 1000, 1)

    report = Report(
        suite=name,
        params={"corpus": corpus.params(), "options": options},
        checked=tally.checked,
        violations=sorted(tally.violations, key=dumps),
        elapsed_ms=elapsed_ms,
        notes=dict(sorted(tally.notes.items())),
    )
    status = "✅" if report.passed else "❌"
    logger.info(
        f"{status} suite={name} | checked={report.checked} | "
        f"violations={len(report.violations)} | elapsed={elapsed_ms}ms"
    )
    return report


def run_suite(name: str, corpus: Corpus, jobs: int = 1, options: Optional[Dict] = None,
              cache_dir: Optional[str] = None) -> Report:
    """Run one suite (manifest name or conditions:<kind>:<class>) and aggregate its report"""
    runner = _resolve_runner(name)
    return _run(name, runner, corpus, jobs, dict(options or {}), cache_dir)


def run_all(corpus: Corpus, jobs: int = 1, options: Optional[Dict] = None,
            cache_dir: Optional[str] = None) -> List[Report]:
    return [run_suite(name, corpus, jobs, options, cache_dir) for name in suite_names()]


def run_conditions(class_name: str, kind: str, corpus: Corpus, jobs: int = 1,
                   options: Optional[Dict] = None, cache_dir: Optional[str] = None) -> Report:
    return run_suite(conditions_suite_name(class_name, kind), corpus, jobs, options, cache_dir)


def suite_thm_2_4(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("thm-2-4", corpus, jobs, options)


def suite_prop_2_5(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("prop-2-5", corpus, jobs, options)


def suite_cor_2_6(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("cor-2-6", corpus, jobs, options)


def suite_conditions(cls: ClassPredicate, corpus: Corpus, jobs: int = 1, **options) -> Report:
    """Closure conditions for any class predicate; registry classes may run in parallel"""
    name = conditions_suite_name(cls.name, cls.kind)
    if jobs > 1:
        try:
            class_predicate(cls.name, cls.kind)
        except ValueError:
            logger.warning(f"⚠️  Class '{cls.name}' is not registered; workers cannot rebuild it, running sequentially")
        else:
            return run_suite(name, corpus, jobs, options)
    runner = lambda c, shard, **o: _check_conditions(cls, c, shard, **o)
    return _run(name, runner, corpus, 1, dict(options), None)


def suite_thm_3_4(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("thm-3-4", corpus, jobs, options)


def suite_thm_4_5(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("thm-4-5", corpus, jobs, options)


def suite_thm_4_6(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("thm-4-6", corpus, jobs, options)


def suite_cor_4_7(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("cor-4-7", corpus, jobs, options)


def suite_remark_4_4(corpus: Corpus, jobs: int = 1, **options) -> Report:
    return run_suite("remark-4-4", corpus, jobs, options)


def reports_frame(reports: Iterable[Report]) -> pd.DataFrame:
    """One row per suite: checked, violations, passed, elapsed_ms"""
    rows = [
        {
            "suite": r.suite,
            "checked": r.checked,
            "violations": len(r.violations),
            "passed": r.passed,
            "elapsed_ms": r.elapsed_ms,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=["suite", "checked", "violations", "passed", "elapsed_ms"])
