#!/usr/bin/env python3
"""
Constructions on Generalized Points

Pullbacks of points and generalized points, the canonical point
(π₂: A×_B C → C, ⟨g, 1_C⟩) of a generalized point, component-wise limits
(terminal object, binary products, equalizers), the class maps F and G
between classes of generalized points and classes of points, and the
finite witness g for regular Schreier epimorphisms.
"""

import logging
from typing import Callable, Dict, Iterable, Iterator, Optional, Tuple, Union

from monoid_core import (
    Cospan,
    Hom,
    LimitCone,
    MorphismError,
    Submonoid,
    compose,
    identity_hom,
    pullback,
    product_hom,
    trivial_monoid,
)
from monoid_enumeration import enumerate_homs
from points import (
    GeneralizedPoint,
    GPMorphism,
    NotSurjectiveError,
    Point,
    as_generalized,
    is_regular_schreier_epi,
    is_schreier_gp,
    is_schreier_gp_literal,
    is_schreier_point,
    is_schreier_point_literal,
    is_strong_gp,
    is_strong_gp_literal,
    is_strong_point,
    representative_set,
)

logger = logging.getLogger(__name__)

POINT_KIND = "point"
GP_KIND = "gp"


class ClassKindError(ValueError):
    """Raised when a class of points meets a generalized point or vice versa"""


class ClassPredicate:
    """Extensional membership test for a class of points or of generalized points"""

    __slots__ = ("kind", "name", "membership")

    def __init__(self, kind: str, name: str, membership: Callable[[Union[Point, GeneralizedPoint]], bool]):
        if kind not in (POINT_KIND, GP_KIND):
            raise ClassKindError(f"unknown class kind '{kind}'")
        self.kind = kind
        self.name = name
        self.membership = membership

    def __call__(self, obj: Union[Point, GeneralizedPoint]) -> bool:
        expected = Point if self.kind == POINT_KIND else GeneralizedPoint
        if not isinstance(obj, expected):
            raise ClassKindError(
                f"class '{self.name}' holds {self.kind}s, got {type(obj).__name__}"
            )
        return bool(self.membership(obj))

    def __repr__(self) -> str:
        return f"ClassPredicate({self.kind}, {self.name!r})"


class PulledBackGP:
    """(π₂, g×1) together with the two pullback squares it was built from"""

    __slots__ = ("original", "along", "result", "a_cone", "c_cone", "g_times_1")

    def __init__(self, original: GeneralizedPoint, along: Hom, result: GeneralizedPoint,
                 a_cone: LimitCone, c_cone: LimitCone, g_times_1: Hom):
        self.original = original
        self.along = along
        self.result = result
        self.a_cone = a_cone
        self.c_cone = c_cone
        self.g_times_1 = g_times_1

    def squares_commute(self) -> bool:
        gp = self.original
        left = compose(self.a_cone.first, self.g_times_1) == compose(gp.g, self.c_cone.first)
        right = compose(gp.f, self.a_cone.first) == compose(self.along, self.a_cone.second)
        tail = compose(self.a_cone.second, self.g_times_1) == self.c_cone.second
        return left and right and tail


class GPEqualizer:
    """Component-wise equalizer of a parallel pair of generalized point morphisms"""

    __slots__ = ("components", "carriers", "inclusions", "f", "g", "generalized_point")

    def __init__(self, components: Dict[str, Submonoid], carriers: Dict, inclusions: Dict[str, Hom],
                 f: Hom, g: Hom):
        self.components = components
        self.carriers = carriers
        self.inclusions = inclusions
        self.f = f
        self.g = g
        composite = compose(f, g)
        self.generalized_point = GeneralizedPoint(f, g, check=False) if composite.is_surjective() else None

    @property
    def is_generalized_point(self) -> bool:
        return self.generalized_point is not None


def pullback_gp(gp: GeneralizedPoint, x: Hom) -> PulledBackGP:
    """Pull (f, g) back along x: X → B, giving (π₂: A×_B X → X, g×1: C×_B X → A×_B X)"""
    if x.cod != gp.f.cod:
        raise MorphismError("x must land in the codomain of f")
    a_cone = pullback(Cospan(gp.f, x))
    c_cone = pullback(Cospan(gp.composite, x))
    g_times_1 = Hom(
        c_cone.carrier,
        a_cone.carrier,
        [a_cone.index_of(gp.g(c), t) for c, t in c_cone.pairs],
        check=False,
    )
    result = GeneralizedPoint(a_cone.second, g_times_1)
    return PulledBackGP(gp, x, result, a_cone, c_cone, g_times_1)


def pullback_point(p: Point, x: Hom) -> Point:
    """Pull (f, s) back along x: X → B, giving (π₂: A×_B X → X, ⟨s∘x, 1_X⟩)"""
    if x.cod != p.f.cod:
        raise MorphismError("x must land in the codomain of f")
    cone = pullback(Cospan(p.f, x))
    section = Hom(x.dom, cone.carrier,
                  [cone.index_of(p.s(x(t)), t) for t in x.dom.elements], check=False)
    return Point(cone.second, section)


def canonical_cone(gp: GeneralizedPoint) -> Tuple[Point, LimitCone]:
    """The canonical point together with the A×_B C cone (f along fg) it lives on"""
    cone = pullback(Cospan(gp.f, gp.composite))
    C = gp.g.dom
    section = Hom(C, cone.carrier, [cone.index_of(gp.g(c), c) for c in C.elements], check=False)
    # Point() asserts π₂∘⟨g, 1_C⟩ = 1_C
    return Point(cone.second, section), cone


def canonical_point(gp: GeneralizedPoint) -> Point:
    return canonical_cone(gp)[0]


def map_F(T: ClassPredicate) -> ClassPredicate:
    """Class of points p with as_generalized(p) ∈ T"""
    if T.kind != GP_KIND:
        raise ClassKindError(f"F takes a class of generalized points, got '{T.name}' ({T.kind})")
    return ClassPredicate(POINT_KIND, f"F({T.name})", lambda p: T(as_generalized(p)))


def map_G(S: ClassPredicate) -> ClassPredicate:
    """Class of generalized points whose canonical point lies in S"""
    if S.kind != POINT_KIND:
        raise ClassKindError(f"G takes a class of points, got '{S.name}' ({S.kind})")
    return ClassPredicate(GP_KIND, f"G({S.name})", lambda gp: S(canonical_point(gp)))


# name -> (kind, membership, definition-literal membership)
_NAMED_CLASSES = {
    "schreier-point": (
        POINT_KIND,
        lambda p: is_schreier_point(p).holds,
        lambda p: is_schreier_point_literal(p).holds,
    ),
    "strong-point": (
        POINT_KIND,
        lambda p: is_strong_point(p).holds,
        lambda p: is_strong_gp_literal(p.as_generalized()).holds,
    ),
    "schreier-gp": (
        GP_KIND,
        lambda gp: is_schreier_gp(gp).holds,
        lambda gp: is_schreier_gp_literal(gp).holds,
    ),
    "strong-gp": (
        GP_KIND,
        lambda gp: is_strong_gp(gp).holds,
        lambda gp: is_strong_gp_literal(gp).holds,
    ),
}


def class_names() -> Tuple[str, ...]:
    return tuple(_NAMED_CLASSES) + ("all", "none")


def class_predicate(name: str, kind: Optional[str] = None, literal: bool = False) -> ClassPredicate:
    """
    Look up a class by name.

    Accepts the registered names, "all"/"none" (kind defaults to gp), and
    F(<gp class>) / G(<point class>) built with map_F / map_G. With literal,
    membership runs the definition-literal checkers.
    """
    name = name.strip()
    if name.startswith("F(") and name.endswith(")"):
        result = map_F(class_predicate(name[2:-1], GP_KIND, literal))
    elif name.startswith("G(") and name.endswith(")"):
        result = map_G(class_predicate(name[2:-1], POINT_KIND, literal))
    elif name in ("all", "none"):
        verdict = name == "all"
        result = ClassPredicate(kind or GP_KIND, name, lambda _obj: verdict)
    elif name in _NAMED_CLASSES:
        registered_kind, membership, literal_membership = _NAMED_CLASSES[name]
        result = ClassPredicate(registered_kind, name, literal_membership if literal else membership)
    else:
        raise ValueError(f"unknown class '{name}'; known: {', '.join(class_names())}")
    if kind is not None and result.kind != kind:
        raise ClassKindError(f"class '{name}' holds {result.kind}s, not {kind}s")
    return result


def terminal_gp() -> GeneralizedPoint:
    one = identity_hom(trivial_monoid())
    return GeneralizedPoint(one, one, check=False)


def terminal_point() -> Point:
    one = identity_hom(trivial_monoid())
    return Point(one, one, check=False)


def product_gp(gp1: GeneralizedPoint, gp2: GeneralizedPoint) -> GeneralizedPoint:
    """(f×f′, g×g′) over B×B′"""
    return GeneralizedPoint(product_hom(gp1.f, gp2.f), product_hom(gp1.g, gp2.g))


def product_point(p1: Point, p2: Point) -> Point:
    return Point(product_hom(p1.f, p2.f), product_hom(p1.s, p2.s))


def _equalizing(h1: Hom, h2: Hom) -> Submonoid:
    return Submonoid(h1.dom, (a for a in h1.dom.elements if h1(a) == h2(a)))


def _restrict(h: Hom, dom_inclusion: Hom, cod_inclusion: Hom) -> Hom:
    back = {old: new for new, old in enumerate(cod_inclusion.mapping)}
    return Hom(dom_inclusion.dom, cod_inclusion.dom,
               [back[h(old)] for old in dom_inclusion.mapping], check=False)


def _check_parallel(m1: GPMorphism, m2: GPMorphism):
    if m1.source != m2.source or m1.target != m2.target:
        raise MorphismError("equalizer needs a parallel pair: sources and targets must coincide")


def equalizer_gp(m1: GPMorphism, m2: GPMorphism) -> GPEqualizer:
    """
    Equalize (α₁, β₁, γ₁) and (α₂, β₂, γ₂) component by component.

    The composite of the restricted f and g need not be surjective; the result
    reports this through is_generalized_point instead of failing.
    """
    _check_parallel(m1, m2)
    components = {
        "A": _equalizing(m1.alpha, m2.alpha),
        "B": _equalizing(m1.beta, m2.beta),
        "C": _equalizing(m1.gamma, m2.gamma),
    }
    carriers, inclusions = {}, {}
    for label, sub in components.items():
        carriers[label], inclusions[label] = sub.as_monoid()
    source = m1.source
    f = _restrict(source.f, inclusions["A"], inclusions["B"])
    g = _restrict(source.g, inclusions["C"], inclusions["A"])
    return GPEqualizer(components, carriers, inclusions, f, g)


def equalizer_point(m1: GPMorphism, m2: GPMorphism) -> Point:
    """Equalizer in points: both ends split, so the restricted pair is again a point"""
    _check_parallel(m1, m2)
    if not (m1.source.is_split() and m1.target.is_split()):
        raise MorphismError("equalizer_point needs morphisms between split generalized points")
    equalizer = equalizer_gp(m1, m2)
    # the C-component of a split source is its B-component
    s = _restrict(m1.source.g, equalizer.inclusions["B"], equalizer.inclusions["A"])
    return Point(equalizer.f, s)


def enumerate_gp_morphisms(source: GeneralizedPoint, target: GeneralizedPoint) -> Iterator[GPMorphism]:
    """All commuting triples (α, β, γ) from source to target"""
    for beta in enumerate_homs(source.f.cod, target.f.cod):
        beta_f = compose(beta, source.f)
        for alpha in enumerate_homs(source.f.dom, target.f.dom):
            if compose(target.f, alpha) != beta_f:
                continue
            alpha_g = compose(alpha, source.g)
            for gamma in enumerate_homs(source.g.dom, target.g.dom):
                if compose(target.g, gamma) == alpha_g:
                    yield GPMorphism(source, target, alpha, beta, gamma, check=False)


def enumerate_point_morphisms(source: Point, target: Point) -> Iterator[GPMorphism]:
    """Morphisms of points: (α, β) with the γ component forced to equal β"""
    for beta in enumerate_homs(source.f.cod, target.f.cod):
        beta_f = compose(beta, source.f)
        s_beta = compose(target.s, beta)
        for alpha in enumerate_homs(source.f.dom, target.f.dom):
            if compose(target.f, alpha) == beta_f and compose(alpha, source.s) == s_beta:
                yield GPMorphism(source.as_generalized(), target.as_generalized(),
                                 alpha, beta, beta, check=False)


def witness_g(f: Hom) -> Optional[GeneralizedPoint]:
    """
    For a regular Schreier epimorphism f, the generalized point (f, inclusion of
    the representative submonoid); None otherwise.
    """
    if not f.is_surjective():
        raise NotSurjectiveError("witness_g needs a surjective homomorphism")
    if not is_regular_schreier_epi(f):
        return None
    pool = set().union(*representative_set(f).values())
    _, include = Submonoid(f.dom, pool).as_monoid()
    return GeneralizedPoint(f, include)


def find_schreier_partner(f: Hom, candidates: Iterable[Hom],
                          via_canonical_point: bool = False) -> Optional[GeneralizedPoint]:
    """
    First candidate g (into dom f, with fg surjective) making (f, g) a Schreier
    generalized point, or whose canonical point is Schreier when via_canonical_point.
    """
    for g in candidates:
        if g.cod != f.dom:
            continue
        gp = GeneralizedPoint(f, g, check=False)
        if not gp.composite.is_surjective():
            continue
        verdict = is_schreier_point(canonical_point(gp)) if via_canonical_point else is_schreier_gp(gp)
        if verdict:
            return gp
    return None
