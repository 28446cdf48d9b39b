#!/usr/bin/env python3
"""
Finite Monoid Core for the Monoid Workbench

Finite monoids as Cayley tables, homomorphisms, submonoids and the limits
(products, pullbacks) every other module builds on.

Elements are integer indices 0..order-1. Tables are read-only numpy arrays;
a tuple-of-tuples copy is kept for scalar lookups in the backtracking loops.
"""

import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)


class MonoidValidationError(ValueError):
    """Raised when a table fails the monoid laws"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class HomValidationError(ValueError):
    """Raised when an element map is not a monoid homomorphism"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class SubmonoidError(ValueError):
    """Raised when a member set is not a submonoid of its ambient monoid"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class MorphismError(ValueError):
    """Raised for composites of mismatched arrows or cones that do not commute"""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.witness = witness


class Monoid:
    """Finite monoid given by its Cayley table and identity index"""

    __slots__ = ("table", "identity", "name", "rows", "_key")

    def __init__(self, table, identity: int = 0, name: Optional[str] = None):
        array = np.array(table, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise MonoidValidationError(
                f"Cayley table must be a non-empty square array, got shape {array.shape}",
                {"law": "shape", "shape": list(array.shape)}
            )
        order = array.shape[0]
        if array.min() < 0 or array.max() >= order:
            bad = np.argwhere((array < 0) | (array >= order))[0]
            raise MonoidValidationError(
                f"table[{bad[0]}][{bad[1]}]={array[bad[0], bad[1]]} is not an element index in [0, {order})",
                {"law": "range", "cell": [int(bad[0]), int(bad[1])]}
            )
        if not 0 <= identity < order:
            raise MonoidValidationError(
                f"identity index {identity} outside [0, {order})",
                {"law": "range", "identity": identity}
            )
        array.setflags(write=False)
        self.table = array
        self.identity = int(identity)
        self.name = name
        self.rows = tuple(tuple(int(v) for v in row) for row in array)
        self._key = (self.identity, self.rows)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def is_commutative(self) -> bool:
        return bool((self.table == self.table.T).all())

    def idempotents(self) -> List[int]:
        diagonal = self.table[np.arange(self.order), np.arange(self.order)]
        return [int(x) for x in np.flatnonzero(diagonal == np.arange(self.order))]

    def units(self) -> List[int]:
        e = self.identity
        return [
            a for a in self.elements
            if any(self.rows[a][b] == e and self.rows[b][a] == e for b in self.elements)
        ]

    def generators(self) -> List[int]:
        """Greedy generating set: scan elements in index order, keep those not yet generated"""
        chosen: List[int] = []
        reached = {self.identity}
        for a in self.elements:
            if a not in reached:
                chosen.append(a)
                reached = _right_closure(self, reached, chosen)
        return chosen

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Monoid):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        label = self.name or "Monoid"
        return f"{label}(order={self.order}, identity={self.identity})"


class Hom:
    """Monoid homomorphism dom → cod given by its element map"""

    __slots__ = ("dom", "cod", "mapping", "_key")

    def __init__(self, dom: Monoid, cod: Monoid, mapping: Sequence[int], check: bool = True):
        values = tuple(int(v) for v in mapping)
        if len(values) != dom.order:
            raise HomValidationError(
                f"map has length {len(values)}, domain has order {dom.order}",
                {"law": "shape", "length": len(values)}
            )
        if any(v < 0 or v >= cod.order for v in values):
            raise HomValidationError(
                f"map sends an element outside the codomain [0, {cod.order})",
                {"law": "range"}
            )
        self.dom = dom
        self.cod = cod
        self.mapping = values
        self._key = (dom, cod, values)
        if check:
            self._check_laws()

    def _check_laws(self):
        if self.mapping[self.dom.identity] != self.cod.identity:
            raise HomValidationError(
                f"identity {self.dom.identity} maps to {self.mapping[self.dom.identity]}, "
                f"not to codomain identity {self.cod.identity}",
                {"law": "identity", "element": self.dom.identity}
            )
        phi = np.array(self.mapping, dtype=np.int64)
        lhs = phi[self.dom.table]
        rhs = self.cod.table[phi[:, None], phi[None, :]]
        broken = np.argwhere(lhs != rhs)
        if len(broken):
            i, j = (int(v) for v in broken[0])
            raise HomValidationError(
                f"map is not multiplicative at ({i}, {j})",
                {"law": "multiplicativity", "pair": [i, j]}
            )

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def as_array(self) -> np.ndarray:
        return np.array(self.mapping, dtype=np.int64)

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.cod.order

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.dom.order

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.mapping == tuple(self.dom.elements)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Hom):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Hom({self.dom!r} -> {self.cod!r}, map={list(self.mapping)})"


class Submonoid:
    """Member set of an ambient monoid, closed under the table and containing the identity"""

    __slots__ = ("ambient", "members")

    def __init__(self, ambient: Monoid, members: Iterable[int], check: bool = True):
        self.ambient = ambient
        self.members: FrozenSet[int] = frozenset(int(m) for m in members)
        if check:
            if ambient.identity not in self.members:
                raise SubmonoidError(
                    "member set does not contain the identity",
                    {"law": "identity", "identity": ambient.identity}
                )
            for a in self.members:
                for b in self.members:
                    if ambient.rows[a][b] not in self.members:
                        raise SubmonoidError(
                            f"member set is not closed: {a}·{b}={ambient.rows[a][b]}",
                            {"law": "closure", "pair": [a, b]}
                        )

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def is_everything(self) -> bool:
        return len(self.members) == self.ambient.order

    def as_monoid(self) -> Tuple[Monoid, Hom]:
        """Restrict to a fresh Monoid over indices 0..k-1 (sorted members) plus its inclusion"""
        new_to_old = sorted(self.members)
        old_to_new = {x: i for i, x in enumerate(new_to_old)}
        rows = [
            [old_to_new[self.ambient.rows[a][b]] for b in new_to_old]
            for a in new_to_old
        ]
        carrier = Monoid(rows, old_to_new[self.ambient.identity])
        return carrier, Hom(carrier, self.ambient, new_to_old, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submonoid):
            return NotImplemented
        return self.ambient == other.ambient and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.ambient, self.members))

    def __repr__(self) -> str:
        return f"Submonoid({sorted(self.members)} of {self.ambient!r})"


class Cospan:
    """Pair of arrows f: A→B, x: X→B with a shared codomain"""

    __slots__ = ("left", "right")

    def __init__(self, left: Hom, right: Hom):
        if left.cod != right.cod:
            raise MorphismError(
                "cospan legs must share a codomain",
                {"left_cod_order": left.cod.order, "right_cod_order": right.cod.order}
            )
        self.left = left
        self.right = right


class LimitCone:
    """
    Product or pullback: a fresh carrier monoid over pair indices with its two
    projections and the injective pairing into dom(first) × dom(second).

    Iterates as (carrier, first, second).
    """

    __slots__ = ("carrier", "first", "second", "pairs", "_index", "legs")

    def __init__(self, carrier: Monoid, first: Hom, second: Hom,
                 pairs: Sequence[Tuple[int, int]], legs: Optional[Cospan] = None):
        self.carrier = carrier
        self.first = first
        self.second = second
        self.pairs = tuple(pairs)
        self._index = {pair: i for i, pair in enumerate(self.pairs)}
        self.legs = legs

    def __iter__(self):
        return iter((self.carrier, self.first, self.second))

    def index_of(self, a: int, x: int) -> int:
        return self._index[(a, x)]

    def contains_pair(self, a: int, x: int) -> bool:
        return (a, x) in self._index

    def mediate(self, p: Hom, q: Hom) -> Hom:
        """Unique u: T → carrier with first∘u = p and second∘u = q"""
        if p.dom != q.dom or p.cod != self.first.cod or q.cod != self.second.cod:
            raise MorphismError("cone legs do not match the limit's projections")
        mapping = []
        for t in p.dom.elements:
            pair = (p(t), q(t))
            if pair not in self._index:
                raise MorphismError(
                    f"cone does not commute at element {t}",
                    {"element": t, "pair": list(pair)}
                )
            mapping.append(self._index[pair])
        return Hom(p.dom, self.carrier, mapping, check=False)


def _right_closure(M: Monoid, start: Iterable[int], seed: Sequence[int]) -> set:
    reached = set(start)
    frontier = list(reached)
    while frontier:
        nxt = []
        for a in frontier:
            row = M.rows[a]
            for s in seed:
                b = row[s]
                if b not in reached:
                    reached.add(b)
                    nxt.append(b)
        frontier = nxt
    return reached


def validate_monoid(table, identity: int = 0, name: Optional[str] = None) -> Monoid:
    """
    Check the monoid laws and return a Monoid.

    Raises:
        MonoidValidationError: with the first identity-law violation or the
        first non-associative triple (i, j, k) in lexicographic order
    """
    M = Monoid(table, identity, name=name)
    T = M.table
    n = M.order
    e = M.identity
    ar = np.arange(n)

    left = np.flatnonzero(T[e, :] != ar)
    if len(left):
        i = int(left[0])
        raise MonoidValidationError(
            f"identity law fails: table[{e}][{i}]={int(T[e, i])}≠{i}",
            {"law": "identity", "side": "left", "element": i}
        )
    right = np.flatnonzero(T[:, e] != ar)
    if len(right):
        i = int(right[0])
        raise MonoidValidationError(
            f"identity law fails: table[{i}][{e}]={int(T[i, e])}≠{i}",
            {"law": "identity", "side": "right", "element": i}
        )

    lhs = T[T]                          # lhs[i, j, k] = (i·j)·k
    rhs = T[ar[:, None, None], T[None, :, :]]  # rhs[i, j, k] = i·(j·k)
    broken = np.argwhere(lhs != rhs)
    if len(broken):
        i, j, k = (int(v) for v in broken[0])
        raise MonoidValidationError(
            f"associativity fails at ({i}, {j}, {k}): "
            f"({i}·{j})·{k}={int(lhs[i, j, k])} but {i}·({j}·{k})={int(rhs[i, j, k])}",
            {"law": "associativity", "triple": [i, j, k]}
        )
    return M


def from_table(rows, identity: int = 0, name: Optional[str] = None) -> Monoid:
    return validate_monoid(rows, identity, name=name)


def trivial_monoid() -> Monoid:
    return Monoid([[0]], 0, name="Z1")


def cyclic_group(n: int) -> Monoid:
    ar = np.arange(n)
    return Monoid((ar[:, None] + ar[None, :]) % n, 0, name=f"Z{n}")


def semilattice_chain(n: int) -> Monoid:
    """n-element chain under meet; index 0 is the top (identity), n-1 the bottom (zero)"""
    ar = np.arange(n)
    return Monoid(np.maximum(ar[:, None], ar[None, :]), 0, name=f"L{n}")


def identity_hom(M: Monoid) -> Hom:
    return Hom(M, M, tuple(M.elements), check=False)


def zero_hom(M: Monoid, N: Monoid) -> Hom:
    return Hom(M, N, (N.identity,) * M.order, check=False)


def inclusion(sub: Submonoid) -> Hom:
    return sub.as_monoid()[1]


def compose(f: Hom, g: Hom) -> Hom:
    """f∘g (apply g first)"""
    if g.cod != f.dom:
        raise MorphismError(
            "cannot compose: codomain of g differs from domain of f",
            {"g_cod_order": g.cod.order, "f_dom_order": f.dom.order}
        )
    return Hom(g.dom, f.cod, tuple(f.mapping[v] for v in g.mapping), check=False)


def kernel(f: Hom) -> Submonoid:
    e = f.cod.identity
    return Submonoid(f.dom, (a for a in f.dom.elements if f.mapping[a] == e), check=False)


def image(f: Hom) -> Submonoid:
    return Submonoid(f.cod, f.mapping, check=False)


def generated_submonoid(M: Monoid, seed: Iterable[int]) -> Submonoid:
    """Least submonoid containing seed: everything reachable from the identity by right multiplication"""
    generators = sorted(set(int(s) for s in seed))
    return Submonoid(M, _right_closure(M, [M.identity], generators), check=False)


def product(M: Monoid, N: Monoid) -> LimitCone:
    """M × N over pair indices i·|N| + j"""
    m, n = M.order, N.order
    table = (M.table[:, None, :, None] * n + N.table[None, :, None, :]).reshape(m * n, m * n)
    carrier = Monoid(table, M.identity * n + N.identity)
    pairs = [(a, b) for a in range(m) for b in range(n)]
    first = Hom(carrier, M, [a for a, _ in pairs], check=False)
    second = Hom(carrier, N, [b for _, b in pairs], check=False)
    return LimitCone(carrier, first, second, pairs)


def product_hom(f: Hom, g: Hom) -> Hom:
    """f × g : dom f × dom g → cod f × cod g, on the carriers built by product()"""
    dom = product(f.dom, g.dom).carrier
    cod = product(f.cod, g.cod).carrier
    n_cod = g.cod.order
    mapping = [f.mapping[a] * n_cod + g.mapping[b] for a in f.dom.elements for b in g.dom.elements]
    return Hom(dom, cod, mapping, check=False)


def pullback(c: Cospan) -> LimitCone:
    """A ×_B X = {(a, x) | f(a) = x(x)} in lexicographic pair order"""
    f, x = c.left, c.right
    A, X = f.dom, x.dom
    pairs = [(a, t) for a in A.elements for t in X.elements if f.mapping[a] == x.mapping[t]]
    index = np.full((A.order, X.order), -1, dtype=np.int64)
    pa = np.array([a for a, _ in pairs], dtype=np.int64)
    px = np.array([t for _, t in pairs], dtype=np.int64)
    index[pa, px] = np.arange(len(pairs))
    table = index[A.table[pa][:, pa], X.table[px][:, px]]
    carrier = Monoid(table, int(index[A.identity, X.identity]))
    first = Hom(carrier, A, pa, check=False)
    second = Hom(carrier, X, px, check=False)
    return LimitCone(carrier, first, second, pairs, legs=c)
