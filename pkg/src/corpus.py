#!/usr/bin/env python3
"""
Verification Corpus

Deterministic families of small monoids (one per isomorphism class) with
cached homomorphism sets, and the instance streams every suite runs over:
surjections, points and generalized points, smallest total order first.
"""

import logging
from itertools import product as cartesian
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from monoid_core import Hom, Monoid, compose
from monoid_enumeration import enumerate_homs, enumerate_monoids, normalize_identity
from points import GeneralizedPoint, Point
from serialization import GENERATOR_VERSION, MonoidModel, monoid_to_dict, read_monoid_stream, write_monoid_stream
from workbench_config import DEFAULT_SEED

logger = logging.getLogger(__name__)

SAMPLING_POLICIES = ("exhaustive", "seeded-random")


class EnumerationCache:
    """JSON-lines cache of enumerated monoids, one file per (order, up_to_iso)"""

    def __init__(self, cache_dir: str = "data/cache"):
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.logger = logging.getLogger(__name__)

    def cache_path(self, order: int, up_to_iso: bool) -> Path:
        kind = "iso" if up_to_iso else "all"
        return self.cache_dir / f"monoids_order{order}_{kind}.jsonl"

    def is_cached(self, order: int, up_to_iso: bool) -> bool:
        return self.cache_path(order, up_to_iso).exists()

    def save(self, order: int, up_to_iso: bool, monoids: Sequence[Monoid]) -> int:
        params = {"order": order, "up_to_iso": up_to_iso}
        return write_monoid_stream(self.cache_path(order, up_to_iso), monoids, params)

    def load(self, order: int, up_to_iso: bool) -> Optional[List[Monoid]]:
        """Cached monoids, or None when the file is missing, stale or unreadable"""
        path = self.cache_path(order, up_to_iso)
        if not path.exists():
            return None
        try:
            header, monoids = read_monoid_stream(path)
        except Exception as e:
            self.logger.warning(f"⚠️  Ignoring unreadable cache {path}: {e}")
            return None
        expected = {"order": order, "up_to_iso": up_to_iso}
        if header.get("version") != GENERATOR_VERSION or header.get("params") != expected:
            self.logger.warning(f"⚠️  Ignoring stale cache {path}")
            return None
        return monoids

    def load_or_enumerate(self, order: int, up_to_iso: bool = True) -> List[Monoid]:
        cached = self.load(order, up_to_iso)
        if cached is not None:
            return cached
        monoids = list(enumerate_monoids(order, up_to_iso=up_to_iso))
        try:
            self.save(order, up_to_iso, monoids)
            self.logger.info(f"✅ Cached {len(monoids)} monoids of order {order} at {self.cache_path(order, up_to_iso)}")
        except OSError as e:
            self.logger.warning(f"⚠️  Could not write cache for order {order}: {e}")
        return monoids


class Corpus:
    """
    Monoids of orders 1..max_order, one per isomorphism class.

    With sampling="seeded-random" the top order is a fixed-seed sample of
    sample_size classes; lower orders stay exhaustive.
    """

    def __init__(self, max_order: int, sampling: str = "exhaustive", seed: int = DEFAULT_SEED,
                 sample_size: int = 40, cache: Optional[EnumerationCache] = None):
        if max_order < 1:
            raise ValueError(f"max_order must be at least 1, got {max_order}")
        if sampling not in SAMPLING_POLICIES:
            raise ValueError(f"unknown sampling policy '{sampling}'; expected one of {SAMPLING_POLICIES}")
        self.logger = logging.getLogger(__name__)
        self.max_order = max_order
        self.sampling = sampling
        self.seed = seed
        self.sample_size = sample_size
        self._explicit: Optional[List[Dict]] = None
        self._hom_cache: Dict[Tuple[int, int], List[Hom]] = {}
        self._positions: Optional[Dict[Monoid, int]] = None

        monoids: List[Monoid] = []
        for order in range(1, max_order + 1):
            pool = cache.load_or_enumerate(order, True) if cache else list(enumerate_monoids(order, up_to_iso=True))
            if sampling == "seeded-random" and order == max_order and len(pool) > sample_size:
                rng = np.random.default_rng(seed)
                picks = sorted(int(i) for i in rng.choice(len(pool), size=sample_size, replace=False))
                pool = [pool[i] for i in picks]
            monoids.extend(pool)
        self.monoids = monoids
        self.logger.info(f"📊 Corpus ready | max_order={max_order} | sampling={sampling} | monoids={len(monoids)}")

    @classmethod
    def from_monoids(cls, monoids: Sequence[Monoid]) -> "Corpus":
        """Corpus over an explicit list; identities are moved to index 0"""
        corpus = cls.__new__(cls)
        corpus.logger = logging.getLogger(__name__)
        corpus.monoids = [normalize_identity(M) for M in monoids]
        corpus.max_order = max(M.order for M in corpus.monoids)
        corpus.sampling = "explicit"
        corpus.seed = None
        corpus.sample_size = None
        corpus._explicit = [monoid_to_dict(M) for M in corpus.monoids]
        corpus._hom_cache = {}
        corpus._positions = None
        return corpus

    def params(self) -> Dict:
        if self._explicit is not None:
            return {"sampling": "explicit", "monoids": self._explicit}
        return {
            "max_order": self.max_order,
            "sampling": self.sampling,
            "seed": self.seed,
            "sample_size": self.sample_size,
        }

    @classmethod
    def from_params(cls, params: Dict, cache_dir: Optional[str] = None) -> "Corpus":
        if params.get("sampling") == "explicit":
            return cls.from_monoids([MonoidModel.model_validate(m).to_monoid() for m in params["monoids"]])
        cache = EnumerationCache(cache_dir) if cache_dir else None
        return cls(params["max_order"], params["sampling"], params["seed"], params["sample_size"], cache=cache)

    def __len__(self) -> int:
        return len(self.monoids)

    def index_of(self, M: Monoid) -> int:
        if self._positions is None:
            self._positions = {N: i for i, N in enumerate(self.monoids)}
        if M not in self._positions:
            raise ValueError(f"{M!r} is not in the corpus")
        return self._positions[M]

    def indices_of_order(self, order: int) -> List[int]:
        return [i for i, M in enumerate(self.monoids) if M.order == order]

    def homs(self, i: int, j: int) -> List[Hom]:
        key = (i, j)
        if key not in self._hom_cache:
            self._hom_cache[key] = list(enumerate_homs(self.monoids[i], self.monoids[j]))
        return self._hom_cache[key]

    def surjections(self, i: int, j: int) -> List[Hom]:
        if self.monoids[i].order < self.monoids[j].order:
            return []
        return [f for f in self.homs(i, j) if f.is_surjective()]

    def homs_into(self, j: int) -> Iterator[Hom]:
        """Every hom X → monoids[j] with X in the corpus"""
        for i in range(len(self.monoids)):
            yield from self.homs(i, j)

    def _pairs_by_size(self) -> List[Tuple[int, int]]:
        n = len(self.monoids)
        pairs = list(cartesian(range(n), range(n)))
        pairs.sort(key=lambda p: (self.monoids[p[0]].order + self.monoids[p[1]].order, p))
        return pairs

    def surjections_all(self) -> Iterator[Hom]:
        for a, b in self._pairs_by_size():
            yield from self.surjections(a, b)

    def points(self) -> Iterator[Point]:
        for a, b in self._pairs_by_size():
            for f in self.surjections(a, b):
                for s in self.homs(b, a):
                    if compose(f, s).is_identity():
                        yield Point(f, s, check=False)

    def generalized_points(self) -> Iterator[GeneralizedPoint]:
        n = len(self.monoids)
        triples = [
            t for t in cartesian(range(n), range(n), range(n))
            if self.monoids[t[2]].order >= self.monoids[t[1]].order
        ]
        triples.sort(key=lambda t: (sum(self.monoids[i].order for i in t), t))
        for a, b, c in triples:
            for f in self.surjections(a, b):
                for g in self.homs(c, a):
                    composite = compose(f, g)
                    if composite.is_surjective():
                        yield GeneralizedPoint(f, g, check=False)

    def split_generalized_points(self) -> Iterator[GeneralizedPoint]:
        for p in self.points():
            yield p.as_generalized()

    def summary_frame(self) -> pd.DataFrame:
        rows = [
            {
                "order": M.order,
                "commutative": M.is_commutative(),
                "group": len(M.units()) == M.order,
                "band": len(M.idempotents()) == M.order,
            }
            for M in self.monoids
        ]
        frame = pd.DataFrame(rows, columns=["order", "commutative", "group", "band"])
        return frame.groupby("order").agg(
            monoids=("order", "size"),
            commutative=("commutative", "sum"),
            groups=("group", "sum"),
            bands=("band", "sum"),
        ).reset_index()
