#!/usr/bin/env python3
"""
Counterexample search tests: expression parsing, search domains, hits
"""

import sys
from pathlib import Path

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))

import pytest

from corpus import Corpus
from monoid_core import cyclic_group, semilattice_chain, trivial_monoid
from property_search import (
    EPI_DOMAIN,
    GP_DOMAIN,
    ExpressionError,
    checker_names,
    evaluate,
    parse_expression,
    referenced_names,
    search,
    search_domain,
    search_hits,
)


@pytest.fixture(scope="module")
def small_corpus():
    return Corpus.from_monoids([
        trivial_monoid(), cyclic_group(2), semilattice_chain(2), semilattice_chain(3),
    ])


class TestParsing:

    def test_precedence(self):
        assert parse_expression("split | schreier-gp & strong-gp") == (
            "or", "split", ("and", "schreier-gp", "strong-gp"),
        )
        assert parse_expression("!(split | strong-gp)") == ("not", ("or", "split", "strong-gp"))
        assert parse_expression("!!split") == ("not", ("not", "split"))

    @pytest.mark.parametrize("text", ["", "   ", "split &", "(split", "split)", "bogus", "split $ strong-gp",
                                      "& split", "split strong-gp"])
    def test_rejects(self, text):
        with pytest.raises(ExpressionError):
            parse_expression(text)

    def test_referenced_names_and_domain(self):
        node = parse_expression("schreier-epi & !regular-schreier")
        assert referenced_names(node) == {"schreier-epi", "regular-schreier"}
        assert search_domain(node) == EPI_DOMAIN
        assert search_domain(parse_expression("split & !schreier-epi")) == GP_DOMAIN

    def test_short_circuit(self):
        looked_up = []

        def lookup(name):
            looked_up.append(name)
            return name == "split"

        assert evaluate(parse_expression("split | strong-gp"), lookup)
        assert looked_up == ["split"]

    def test_checker_names(self):
        assert set(checker_names()) == {
            "split", "schreier-point", "strong-gp", "schreier-gp", "schreier-epi", "regular-schreier",
        }


class TestSearch:

    def test_contradiction_has_no_hits(self, small_corpus):
        report = search("!split & split", small_corpus)
        assert report.notes["hit_count"] == 0
        assert report.checked > 0
        assert report.passed

    def test_split_but_not_schreier(self, small_corpus):
        hits = search_hits("split & !schreier-point", small_corpus)
        assert hits
        assert [3, 2, 2] in [hit["orders"] for hit in hits]
        for hit in hits:
            assert hit["values"]["split"] is True
            assert hit["values"]["schreier-point"] is False
            assert set(hit["instance"]) == {"gp"}

    def test_known_implications_have_no_counterexamples(self, small_corpus):
        for expression in ("schreier-point & !split", "schreier-gp & !strong-gp",
                           "regular-schreier & !schreier-epi"):
            assert search(expression, small_corpus).notes["hit_count"] == 0, expression

    def test_epi_domain_hits(self, small_corpus):
        hits = search_hits("!schreier-epi", small_corpus)
        assert hits
        assert all(set(hit["instance"]) == {"f"} for hit in hits)
        assert [3, 2] in [hit["orders"] for hit in hits]

    def test_hits_stream_in_order_and_revalidate(self, small_corpus):
        streamed = []
        report = search("strong-gp & !schreier-gp", small_corpus, on_hit=streamed.append)
        indices = [hit["index"] for hit in streamed]
        assert indices == sorted(indices)
        assert report.notes["hit_indices"] == indices
        assert report.notes["revalidation_failures"] == 0

    def test_parallel_matches_sequential(self):
        corpus = Corpus(2)
        expression = "split & strong-gp"
        one = search_hits(expression, corpus)
        parallel = []
        report = search(expression, corpus, jobs=2, on_hit=parallel.append)
        assert parallel == one
        assert report.checked == search(expression, corpus).checked

    def test_bad_expression(self, small_corpus):
        with pytest.raises(ExpressionError):
            search("split & nonsense", small_corpus)
