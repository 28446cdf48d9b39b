#!/usr/bin/env python3
"""
Tests for pullbacks, canonical points, class maps, limits and the witness g
"""

import sys
import unittest
from pathlib import Path

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))

from constructions import (
    ClassKindError,
    ClassPredicate,
    POINT_KIND,
    GP_KIND,
    canonical_cone,
    canonical_point,
    class_names,
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
from monoid_core import (
    Hom,
    MorphismError,
    compose,
    cyclic_group,
    identity_hom,
    product,
    semilattice_chain,
    trivial_monoid,
    zero_hom,
)
from monoid_enumeration import enumerate_homs, enumerate_monoids
from points import (
    GeneralizedPoint,
    GPMorphism,
    NotSurjectiveError,
    Point,
    as_generalized,
    is_schreier_gp,
    is_schreier_point,
    is_strong_gp,
)


def running_example():
    M3, B = semilattice_chain(3), semilattice_chain(2)
    return Point(Hom(M3, B, [0, 0, 1]), Hom(B, M3, [0, 2]))


def klein_projection():
    Z2 = cyclic_group(2)
    carrier, _, second = product(Z2, Z2)
    return Point(second, Hom(Z2, carrier, [0, 1]))


def small_corpus():
    """Every class of order ≤ 2 plus the three-element chain"""
    return Corpus.from_monoids([
        trivial_monoid(), cyclic_group(2), semilattice_chain(2), semilattice_chain(3),
    ])


class TestPullbacks(unittest.TestCase):

    def test_pullback_along_identity_keeps_sizes(self):
        gp = as_generalized(klein_projection())
        pulled = pullback_gp(gp, identity_hom(gp.f.cod))
        self.assertEqual(pulled.result.orders(), [4, 2, 2])
        self.assertTrue(pulled.squares_commute())
        self.assertTrue(is_schreier_gp(pulled.result))

    def test_pullback_to_the_trivial_monoid_is_the_kernel(self):
        p = klein_projection()
        x = Hom(trivial_monoid(), p.f.cod, [0])
        pulled = pullback_point(p, x)
        self.assertEqual(pulled.f.dom.order, 2)
        self.assertEqual(pulled.f.cod.order, 1)
        self.assertTrue(is_schreier_point(pulled))

    def test_pullback_of_non_split_gp(self):
        M3, B = semilattice_chain(3), semilattice_chain(2)
        gp = GeneralizedPoint(Hom(M3, B, [0, 0, 1]), identity_hom(M3))
        x = zero_hom(B, B)
        pulled = pullback_gp(gp, x)
        self.assertTrue(pulled.squares_commute())
        self.assertTrue(pulled.result.composite.is_surjective())

    def test_x_must_land_in_the_base(self):
        p = klein_projection()
        with self.assertRaises(MorphismError):
            pullback_gp(as_generalized(p), identity_hom(semilattice_chain(2)))
        with self.assertRaises(MorphismError):
            pullback_point(p, identity_hom(semilattice_chain(2)))


class TestCanonicalPoint(unittest.TestCase):

    def test_shape(self):
        gp = as_generalized(klein_projection())
        point, cone = canonical_cone(gp)
        self.assertEqual(point.f, cone.second)
        self.assertTrue(compose(point.f, point.s).is_identity())
        self.assertEqual(point.f.cod, gp.g.dom)

    def test_tracks_schreier_on_examples(self):
        self.assertTrue(is_schreier_point(canonical_point(as_generalized(klein_projection()))))
        self.assertFalse(is_schreier_point(canonical_point(as_generalized(running_example()))))

    def test_tracks_schreier_on_small_corpus(self):
        for gp in small_corpus().generalized_points():
            with self.subTest(gp=repr(gp)):
                self.assertEqual(is_schreier_gp(gp).holds, is_schreier_point(canonical_point(gp)).holds)


class TestClassMaps(unittest.TestCase):

    def test_kinds_flip(self):
        self.assertEqual(class_predicate("F(schreier-gp)").kind, POINT_KIND)
        self.assertEqual(class_predicate("F(schreier-gp)").name, "F(schreier-gp)")
        self.assertEqual(class_predicate("G(F(schreier-gp))").kind, GP_KIND)
        self.assertEqual(class_predicate("all", POINT_KIND).kind, POINT_KIND)
        self.assertEqual(class_predicate("none").kind, GP_KIND)

    def test_kind_mismatches(self):
        with self.assertRaises(ClassKindError):
            map_F(class_predicate("schreier-point"))
        with self.assertRaises(ClassKindError):
            map_G(class_predicate("schreier-gp"))
        with self.assertRaises(ClassKindError):
            class_predicate("schreier-point", GP_KIND)
        with self.assertRaises(ClassKindError):
            class_predicate("F(schreier-point)")
        with self.assertRaises(ClassKindError):
            class_predicate("schreier-gp")(running_example())

    def test_unknown_class(self):
        with self.assertRaises(ValueError):
            class_predicate("bogus")
        self.assertIn("schreier-gp", class_names())

    def test_membership(self):
        p = running_example()
        self.assertFalse(class_predicate("schreier-point")(p))
        self.assertTrue(class_predicate("strong-point")(p))
        self.assertFalse(class_predicate("F(schreier-gp)")(p))
        self.assertTrue(class_predicate("F(schreier-gp)")(klein_projection()))
        self.assertTrue(class_predicate("all", POINT_KIND)(p))
        self.assertFalse(class_predicate("none", POINT_KIND)(p))

    def test_literal_membership_agrees(self):
        for name in ("schreier-gp", "strong-gp", "G(schreier-point)"):
            fast, literal = class_predicate(name), class_predicate(name, literal=True)
            for gp in small_corpus().generalized_points():
                self.assertEqual(fast(gp), literal(gp))

    def test_round_trips_on_schreier_classes(self):
        corpus = small_corpus()
        T = class_predicate("schreier-gp")
        GFT = map_G(map_F(T))
        for gp in corpus.generalized_points():
            self.assertEqual(GFT(gp), T(gp))
        S = class_predicate("schreier-point")
        FGS = map_F(map_G(S))
        for p in corpus.points():
            self.assertEqual(FGS(p), S(p))

    def test_predicate_wraps_plain_callables(self):
        sized = ClassPredicate(POINT_KIND, "big", lambda p: p.f.dom.order > 2)
        self.assertTrue(sized(running_example()))
        with self.assertRaises(ClassKindError):
            ClassPredicate("arrow", "nothing", lambda _obj: False)


class TestLimits(unittest.TestCase):

    def test_terminal_objects(self):
        one = terminal_gp()
        self.assertTrue(one.is_split())
        self.assertEqual(one.orders(), [1, 1, 1])
        self.assertTrue(is_schreier_gp(one))
        self.assertTrue(is_schreier_point(terminal_point()))

    def test_products(self):
        p = product_point(klein_projection(), terminal_point())
        self.assertEqual(p.f.dom.order, 4)
        self.assertEqual(p.f.cod.order, 2)
        self.assertTrue(is_schreier_point(p))
        gp = product_gp(as_generalized(running_example()), terminal_gp())
        self.assertEqual(gp.orders(), [3, 2, 2])
        self.assertFalse(is_schreier_gp(gp))
        self.assertTrue(is_strong_gp(gp))

    def test_equalizer_of_identity_with_itself(self):
        gp = as_generalized(klein_projection())
        one = GPMorphism.identity(gp)
        equalizer = equalizer_gp(one, one)
        self.assertTrue(equalizer.is_generalized_point)
        self.assertEqual(equalizer.generalized_point.orders(), gp.orders())
        self.assertTrue(all(sub.is_everything() for sub in equalizer.components.values()))

    def test_point_equalizers_stay_schreier(self):
        p = klein_projection()
        morphisms = list(enumerate_point_morphisms(p, p))
        self.assertGreater(len(morphisms), 1)
        one = GPMorphism.identity(p.as_generalized())
        for m in morphisms:
            e = equalizer_point(m, one)
            self.assertTrue(is_schreier_point(e))

    def test_equalizer_needs_parallel_pair(self):
        a = GPMorphism.identity(as_generalized(klein_projection()))
        b = GPMorphism.identity(as_generalized(running_example()))
        with self.assertRaises(MorphismError):
            equalizer_gp(a, b)

    def test_point_equalizer_needs_split_ends(self):
        M3, B = semilattice_chain(3), semilattice_chain(2)
        gp = GeneralizedPoint(Hom(M3, B, [0, 0, 1]), identity_hom(M3))
        one = GPMorphism.identity(gp)
        with self.assertRaises(MorphismError):
            equalizer_point(one, one)

    def test_enumerated_morphisms_include_identity(self):
        gp = as_generalized(running_example())
        found = list(enumerate_gp_morphisms(gp, gp))
        self.assertTrue(any(
            m.alpha.is_identity() and m.beta.is_identity() and m.gamma.is_identity() for m in found
        ))
        for m in found:
            GPMorphism(m.source, m.target, m.alpha, m.beta, m.gamma)


class TestWitnessG(unittest.TestCase):
    """Regular Schreier epimorphisms come with a Schreier partner g"""

    def test_semilattice_to_trivial_uses_the_identity_only(self):
        f = Hom(semilattice_chain(2), trivial_monoid(), [0, 0])
        gp = witness_g(f)
        self.assertIsNotNone(gp)
        self.assertEqual(gp.g.dom.order, 1)
        self.assertTrue(is_schreier_gp(gp))

    def test_group_projection_uses_everything(self):
        gp = witness_g(klein_projection().f)
        self.assertEqual(gp.g.dom.order, 4)
        self.assertTrue(is_schreier_gp(gp))

    def test_identity(self):
        gp = witness_g(identity_hom(semilattice_chain(3)))
        self.assertEqual(gp.g.mapping, (0, 1, 2))
        self.assertTrue(is_schreier_gp(gp))

    def test_none_without_representatives(self):
        self.assertIsNone(witness_g(running_example().f))

    def test_requires_surjection(self):
        with self.assertRaises(NotSurjectiveError):
            witness_g(Hom(trivial_monoid(), cyclic_group(2), [0]))


class TestFindSchreierPartner(unittest.TestCase):

    def test_skips_non_schreier_candidates(self):
        L2, Z1 = semilattice_chain(2), trivial_monoid()
        f = Hom(L2, Z1, [0, 0])
        candidates = [identity_hom(L2), Hom(Z1, L2, [0])]
        for via_canonical_point in (False, True):
            with self.subTest(via_canonical_point=via_canonical_point):
                gp = find_schreier_partner(f, candidates, via_canonical_point)
                self.assertEqual(gp.g.dom.order, 1)

    def test_no_partner_for_the_running_example(self):
        f = running_example().f
        candidates = [
            g for n in (1, 2, 3) for C in enumerate_monoids(n, up_to_iso=True)
            for g in enumerate_homs(C, f.dom)
        ]
        self.assertIsNone(find_schreier_partner(f, candidates))
        self.assertIsNone(find_schreier_partner(f, candidates, via_canonical_point=True))

    def test_ignores_candidates_elsewhere(self):
        f = klein_projection().f
        self.assertIsNone(find_schreier_partner(f, [identity_hom(semilattice_chain(3))]))


if __name__ == "__main__":
    unittest.main()
