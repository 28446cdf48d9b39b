#!/usr/bin/env python3
"""
Points and Generalized Points of Monoids

Split epimorphisms with chosen sections, composable pairs (f, g) with fg
surjective, morphisms between them, and the strongness and Schreier checkers.

Every Schreier checker comes in two versions: the default one works on numpy
count matrices, the *_literal one is a direct scan of the definition. The two
must agree on every instance; the literal scans are used to revalidate
anything reported as a violation or a search hit.

Decompositions are always written k·(section value) with the kernel element
on the left.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Union

import numpy as np

from monoid_core import (
    Hom,
    Monoid,
    MorphismError,
    Submonoid,
    compose,
    generated_submonoid,
    identity_hom,
    image,
    kernel,
)

logger = logging.getLogger(__name__)


class PointError(ValueError):
    """Raised when (f, s) is not a split epimorphism with section s"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class GeneralizedPointError(ValueError):
    """Raised when (f, g) is not composable or fg is not surjective"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class NotSurjectiveError(ValueError):
    """Raised when a checker that needs a surjection receives something else"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class CheckResult:
    """Outcome of a decision procedure; truthy iff it holds"""

    __slots__ = ("holds", "witness")

    def __init__(self, holds: bool, witness=None):
        self.holds = bool(holds)
        self.witness = witness

    def __bool__(self) -> bool:
        return self.holds

    def __eq__(self, other) -> bool:
        if not isinstance(other, CheckResult):
            return NotImplemented
        return self.holds == other.holds and self.witness == other.witness

    def to_dict(self) -> Dict:
        return {"holds": self.holds, "witness": self.witness}

    def __repr__(self) -> str:
        return f"CheckResult(holds={self.holds}, witness={self.witness})"


class Point:
    """Split epimorphism f: A → B with section s: B → A, f∘s = 1_B"""

    __slots__ = ("f", "s")

    def __init__(self, f: Hom, s: Hom, check: bool = True):
        if check:
            if s.cod != f.dom or s.dom != f.cod:
                raise PointError("section must go from the codomain of f back to its domain")
            split = compose(f, s)
            if not split.is_identity():
                b = next(b for b in split.dom.elements if split(b) != b)
                raise PointError(
                    f"f∘s is not the identity: f(s({b}))={split(b)}",
                    {"element": b}
                )
        self.f = f
        self.s = s

    def as_generalized(self) -> "GeneralizedPoint":
        return GeneralizedPoint(self.f, self.s, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.f == other.f and self.s == other.s

    def __hash__(self) -> int:
        return hash((self.f, self.s))

    def __repr__(self) -> str:
        return f"Point(A={self.f.dom.order}, B={self.f.cod.order}, f={list(self.f.mapping)}, s={list(self.s.mapping)})"


class GeneralizedPoint:
    """Composable pair C --g--> A --f--> B whose composite fg is surjective"""

    __slots__ = ("f", "g", "composite")

    def __init__(self, f: Hom, g: Hom, check: bool = True):
        if g.cod != f.dom:
            raise GeneralizedPointError("g must land in the domain of f")
        composite = compose(f, g)
        if check and not composite.is_surjective():
            missed = sorted(set(f.cod.elements) - set(composite.mapping))
            raise GeneralizedPointError(
                f"fg is not surjective: misses {missed}",
                {"missed": missed}
            )
        self.f = f
        self.g = g
        self.composite = composite

    def is_split(self) -> bool:
        return self.composite.is_identity()

    def as_point(self) -> Point:
        if not self.is_split():
            raise PointError("generalized point is not split: fg is not the identity")
        return Point(self.f, self.g, check=False)

    def orders(self) -> List[int]:
        return [self.f.dom.order, self.f.cod.order, self.g.dom.order]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralizedPoint):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.f, self.g))

    def __repr__(self) -> str:
        A, B, C = self.orders()
        return f"GeneralizedPoint(C={C} -> A={A} -> B={B}, f={list(self.f.mapping)}, g={list(self.g.mapping)})"


class GPMorphism:
    """Triple (alpha, beta, gamma) making both squares between two generalized points commute"""

    __slots__ = ("source", "target", "alpha", "beta", "gamma")

    def __init__(self, source: GeneralizedPoint, target: GeneralizedPoint,
                 alpha: Hom, beta: Hom, gamma: Hom, check: bool = True):
        if check:
            if compose(alpha, source.g) != compose(target.g, gamma):
                raise MorphismError("left square does not commute: alpha∘g ≠ g'∘gamma")
            if compose(beta, source.f) != compose(target.f, alpha):
                raise MorphismError("right square does not commute: beta∘f ≠ f'∘alpha")
        self.source = source
        self.target = target
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma

    @classmethod
    def identity(cls, gp: GeneralizedPoint) -> "GPMorphism":
        return cls(gp, gp, identity_hom(gp.f.dom), identity_hom(gp.f.cod),
                   identity_hom(gp.g.dom), check=False)

    def compose(self, other: "GPMorphism") -> "GPMorphism":
        """self∘other (other first)"""
        if other.target != self.source:
            raise MorphismError("cannot compose: target of the first morphism is not the source of the second")
        return GPMorphism(other.source, self.target,
                          compose(self.alpha, other.alpha),
                          compose(self.beta, other.beta),
                          compose(self.gamma, other.gamma), check=False)


def as_generalized(p: Point) -> GeneralizedPoint:
    return p.as_generalized()


def _part_members(M: Monoid, part: Union[Submonoid, Hom]) -> Iterable[int]:
    if isinstance(part, Submonoid):
        if part.ambient != M:
            raise ValueError("submonoid lives in a different ambient monoid")
        return part.members
    if isinstance(part, Hom):
        if part.cod != M:
            raise ValueError("morphism does not land in the ambient monoid")
        return image(part).members
    raise TypeError(f"expected Submonoid or Hom, got {type(part).__name__}")


def jointly_strongly_epic(M: Monoid, parts: Iterable[Union[Submonoid, Hom]]) -> CheckResult:
    """The parts (submonoids or images of homs into M) together generate M"""
    seed = set()
    for part in parts:
        seed.update(_part_members(M, part))
    generated = generated_submonoid(M, seed)
    if generated.is_everything():
        return CheckResult(True)
    return CheckResult(False, {"generated": sorted(generated.members)})


def is_strong_gp(gp: GeneralizedPoint) -> CheckResult:
    return jointly_strongly_epic(gp.f.dom, [kernel(gp.f), gp.g])


def is_strong_gp_literal(gp: GeneralizedPoint) -> CheckResult:
    """Close Ker(f) ∪ g(C) ∪ {e} under all products until nothing new appears"""
    A, f = gp.f.dom, gp.f
    reached = {A.identity} | {k for k in A.elements if f(k) == f.cod.identity} | set(gp.g.mapping)
    grown = True
    while grown:
        fresh = {A.mul(a, b) for a in reached for b in reached} - reached
        grown = bool(fresh)
        reached |= fresh
    if len(reached) == A.order:
        return CheckResult(True)
    return CheckResult(False, {"generated": sorted(reached)})


def is_strong_point(p: Point) -> CheckResult:
    return is_strong_gp(p.as_generalized())


def _kernel_array(f: Hom) -> np.ndarray:
    return np.array(sorted(kernel(f).members), dtype=np.int64)


def is_schreier_point(p: Point) -> CheckResult:
    """Every a ∈ A is k·s(f(a)) for exactly one k ∈ Ker(f)"""
    A = p.f.dom
    n = A.order
    K = _kernel_array(p.f)
    sf = p.s.as_array()[p.f.as_array()]
    products = A.table[K][:, sf]            # products[i, a] = K[i]·s(f(a))
    counts = (products == np.arange(n)[None, :]).sum(axis=0)
    bad = np.flatnonzero(counts != 1)
    if len(bad):
        a = int(bad[0])
        return CheckResult(False, {"element": a, "decompositions": int(counts[a])})
    return CheckResult(True)


def is_schreier_point_literal(p: Point) -> CheckResult:
    A = p.f.dom
    K = [k for k in A.elements if p.f(k) == p.f.cod.identity]
    for a in A.elements:
        target = p.s(p.f(a))
        found = [k for k in K if A.mul(k, target) == a]
        if len(found) != 1:
            return CheckResult(False, {"element": a, "decompositions": len(found)})
    return CheckResult(True)


def _require_surjective(f: Hom):
    if not f.is_surjective():
        missed = sorted(set(f.cod.elements) - set(f.mapping))
        raise NotSurjectiveError(f"homomorphism is not surjective: misses {missed}", {"missed": missed})


def _representative_mask(f: Hom) -> np.ndarray:
    """
    a represents f(a) iff x ↦ x·a is a bijection Ker(f) → fiber(f(a)).

    Translates of a by kernel elements always stay in the fiber, so it is enough
    that the column of products is repetition-free and as long as the fiber.
    """
    A = f.dom
    K = _kernel_array(f)
    phi = f.as_array()
    products = np.sort(A.table[K], axis=0)   # column a holds the products k·a
    distinct = (np.diff(products, axis=0) != 0).all(axis=0)
    fiber_sizes = np.bincount(phi, minlength=f.cod.order)
    return distinct & (fiber_sizes[phi] == len(K))


def representative_set(f: Hom) -> Dict[int, FrozenSet[int]]:
    _require_surjective(f)
    mask = _representative_mask(f)
    found: Dict[int, set] = {b: set() for b in f.cod.elements}
    for a in np.flatnonzero(mask):
        found[f.mapping[int(a)]].add(int(a))
    return {b: frozenset(members) for b, members in found.items()}


def representatives(f: Hom, b: int) -> FrozenSet[int]:
    """All a over b such that each a' over b is k·a for a unique k ∈ Ker(f)"""
    _require_surjective(f)
    if not 0 <= b < f.cod.order:
        raise ValueError(f"{b} is not an element of the codomain")
    mask = _representative_mask(f)
    return frozenset(a for a in f.dom.elements if mask[a] and f.mapping[a] == b)


def representatives_literal(f: Hom, b: int) -> FrozenSet[int]:
    _require_surjective(f)
    A = f.dom
    fiber = [a for a in A.elements if f(a) == b]
    K = [k for k in A.elements if f(k) == f.cod.identity]
    chosen = set()
    for a in fiber:
        if all(sum(1 for k in K if A.mul(k, a) == other) == 1 for other in fiber):
            chosen.add(a)
    return frozenset(chosen)


def _schreier_epi_from(f: Hom, reps: Dict[int, FrozenSet[int]]) -> CheckResult:
    missing = [b for b in f.cod.elements if not reps[b]]
    if missing:
        return CheckResult(False, {"reason": "no-representative", "element": missing[0]})
    return CheckResult(True)


def _regular_from(f: Hom, reps: Dict[int, FrozenSet[int]]) -> CheckResult:
    epi = _schreier_epi_from(f, reps)
    if not epi:
        return epi
    pool = set().union(*reps.values())
    A = f.dom
    if A.identity not in pool:
        return CheckResult(False, {"reason": "identity-not-representative", "element": A.identity})
    for r1 in sorted(pool):
        for r2 in sorted(pool):
            product = A.mul(r1, r2)
            if product not in pool:
                return CheckResult(False, {"reason": "not-closed", "pair": [r1, r2], "product": product})
    return CheckResult(True)


def is_schreier_epi(f: Hom) -> CheckResult:
    return _schreier_epi_from(f, representative_set(f))


def is_schreier_epi_literal(f: Hom) -> CheckResult:
    _require_surjective(f)
    return _schreier_epi_from(f, {b: representatives_literal(f, b) for b in f.cod.elements})


def is_regular_schreier_epi(f: Hom) -> CheckResult:
    """Schreier epimorphism whose representatives, taken together, form a submonoid"""
    return _regular_from(f, representative_set(f))


def is_regular_schreier_epi_literal(f: Hom) -> CheckResult:
    _require_surjective(f)
    return _regular_from(f, {b: representatives_literal(f, b) for b in f.cod.elements})


def is_schreier_gp(gp: GeneralizedPoint) -> CheckResult:
    """For all a, c with f(a) = fg(c): a = k·g(c) for exactly one k ∈ Ker(f)"""
    A = gp.f.dom
    n_a, n_c = A.order, gp.g.dom.order
    K = _kernel_array(gp.f)
    g_arr = gp.g.as_array()
    products = A.table[K][:, g_arr]         # products[i, c] = K[i]·g(c)
    counts = np.zeros((n_a, n_c), dtype=np.int64)
    np.add.at(counts, (products, np.broadcast_to(np.arange(n_c), products.shape)), 1)
    related = gp.f.as_array()[:, None] == gp.composite.as_array()[None, :]
    bad = np.argwhere(related & (counts != 1))
    if len(bad):
        a, c = (int(v) for v in bad[0])
        return CheckResult(False, {"pair": [a, c], "decompositions": int(counts[a, c])})
    return CheckResult(True)


def is_schreier_gp_literal(gp: GeneralizedPoint) -> CheckResult:
    A = gp.f.dom
    f, g = gp.f, gp.g
    K = [k for k in A.elements if f(k) == f.cod.identity]
    for a in A.elements:
        for c in g.dom.elements:
            if f(a) != f(g(c)):
                continue
            found = [k for k in K if A.mul(k, g(c)) == a]
            if len(found) != 1:
                return CheckResult(False, {"pair": [a, c], "decompositions": len(found)})
    return CheckResult(True)
