#!/usr/bin/env python3
"""
Corpus, enumeration cache and workbench configuration tests
"""

import json
import sys
from pathlib import Path

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))

import pytest

from corpus import Corpus, EnumerationCache
from monoid_core import Monoid, compose, cyclic_group
from monoid_enumeration import enumerate_monoids
from points import Point
from serialization import write_monoid_stream
from workbench_config import DEFAULT_SEED, WorkbenchConfig, load_workbench_config


@pytest.fixture(scope="module")
def corpus3():
    return Corpus(3)


class TestCorpusFamilies:
    """Deterministic monoid families"""

    def test_exhaustive_sizes(self, corpus3):
        assert len(corpus3) == 10
        assert [M.order for M in corpus3.monoids] == [1, 2, 2] + [3] * 7
        assert corpus3.indices_of_order(2) == [1, 2]

    def test_same_corpus_twice(self, corpus3):
        assert Corpus(3).monoids == corpus3.monoids

    def test_seeded_sampling_is_reproducible(self, corpus3):
        first = Corpus(3, sampling="seeded-random", seed=7, sample_size=3)
        second = Corpus(3, sampling="seeded-random", seed=7, sample_size=3)
        assert len(first) == 6
        assert first.monoids == second.monoids
        exhaustive_top = corpus3.monoids[3:]
        assert all(M in exhaustive_top for M in first.monoids[3:])

    def test_sampling_leaves_small_orders_alone(self):
        assert len(Corpus(2, sampling="seeded-random", sample_size=5)) == 3

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            Corpus(0)
        with pytest.raises(ValueError):
            Corpus(2, sampling="everything")

    def test_params_round_trip(self, corpus3):
        params = corpus3.params()
        assert params == {"max_order": 3, "sampling": "exhaustive", "seed": DEFAULT_SEED, "sample_size": 40}
        assert Corpus.from_params(params).monoids == corpus3.monoids

    def test_explicit_corpus_normalizes_identity(self):
        corpus = Corpus.from_monoids([Monoid([[0, 0], [0, 1]], 1), cyclic_group(2)])
        assert corpus.monoids[0].identity == 0
        assert corpus.monoids[0].rows == ((0, 1), (1, 1))
        assert corpus.params()["sampling"] == "explicit"
        assert Corpus.from_params(corpus.params()).monoids == corpus.monoids

    def test_index_lookup(self, corpus3):
        assert corpus3.index_of(corpus3.monoids[4]) == 4
        with pytest.raises(ValueError):
            corpus3.index_of(cyclic_group(5))

    def test_hom_sets_are_cached(self, corpus3):
        assert corpus3.homs(3, 1) is corpus3.homs(3, 1)
        assert all(f.is_surjective() for f in corpus3.surjections(3, 1))
        assert corpus3.surjections(1, 3) == []

    def test_summary_frame(self, corpus3):
        frame = corpus3.summary_frame()
        assert list(frame["order"]) == [1, 2, 3]
        assert list(frame["monoids"]) == [1, 2, 7]
        assert list(frame["groups"]) == [1, 1, 1]


class TestInstanceStreams:

    def test_points_are_split(self, corpus3):
        totals = []
        for p in corpus3.points():
            Point(p.f, p.s)
            totals.append(p.f.dom.order + p.f.cod.order)
        assert totals
        assert totals == sorted(totals)

    def test_generalized_points(self, corpus3):
        totals = []
        for gp in corpus3.generalized_points():
            assert compose(gp.f, gp.g).is_surjective()
            assert gp.g.dom.order >= gp.f.cod.order
            totals.append(sum(gp.orders()))
        assert totals == sorted(totals)

    def test_split_stream_matches_points(self, corpus3):
        split = list(corpus3.split_generalized_points())
        assert len(split) == sum(1 for _ in corpus3.points())
        assert all(gp.is_split() for gp in split)

    def test_streams_are_deterministic(self, corpus3):
        again = Corpus(3)
        assert list(again.generalized_points()) == list(corpus3.generalized_points())


class TestEnumerationCache:

    def test_enumerate_then_reload(self, tmp_path):
        cache = EnumerationCache(str(tmp_path / "cache"))
        assert not cache.is_cached(3, True)
        fresh = cache.load_or_enumerate(3)
        assert len(fresh) == 7
        assert cache.is_cached(3, True)
        assert cache.load(3, True) == fresh
        assert cache.cache_path(3, False).name == "monoids_order3_all.jsonl"

    def test_stale_and_broken_files_are_ignored(self, tmp_path):
        cache = EnumerationCache(str(tmp_path))
        write_monoid_stream(cache.cache_path(2, True), enumerate_monoids(2, up_to_iso=True),
                            {"order": 3, "up_to_iso": True})
        assert cache.load(2, True) is None
        cache.cache_path(1, True).write_text("not json\n")
        assert cache.load(1, True) is None
        assert cache.load_or_enumerate(1) == list(enumerate_monoids(1, up_to_iso=True))

    def test_corpus_through_cache(self, tmp_path, corpus3):
        cache = EnumerationCache(str(tmp_path))
        assert Corpus(3, cache=cache).monoids == corpus3.monoids
        assert Corpus(3, cache=cache).monoids == corpus3.monoids
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "monoids_order1_iso.jsonl", "monoids_order2_iso.jsonl", "monoids_order3_iso.jsonl",
        ]


class TestWorkbenchConfig:

    def test_missing_file_gives_defaults(self, tmp_path):
        config = load_workbench_config(tmp_path / "absent.json")
        assert config == WorkbenchConfig()
        assert config.corpus.seed == DEFAULT_SEED

    def test_partial_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"corpus": {"seed": 5}, "parallelism": {"jobs": 3}}))
        config = load_workbench_config(path)
        assert config.corpus.seed == 5
        assert config.parallelism.jobs == 3
        assert config.suites.product_pairs is None
        assert config.suites.equalizer_pairs is None

    def test_invalid_values_fall_back(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"parallelism": {"jobs": 0}}))
        assert load_workbench_config(path) == WorkbenchConfig()

    def test_shipped_config(self):
        config = load_workbench_config(Path(__file__).parent / "config" / "workbench_config.json")
        assert config.suites.product_pairs is None and config.suites.equalizer_pairs is None
        assert config.suite_max_order("thm-4-6", 0) == 4
        assert config.suite_max_order("thm-2-4", 0) == 3
        assert config.suite_max_order("unlisted", 2) == 2
