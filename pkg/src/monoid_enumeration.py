#!/usr/bin/env python3
"""
Monoid Enumeration and Isomorphism

Backtracking enumeration of Cayley tables (identity fixed at index 0, cells
filled in row-major order, associativity checked incrementally), homomorphism
enumeration over a generating set, canonical forms and isomorphism search.
"""

import logging
from itertools import permutations, product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from monoid_core import Hom, Monoid

logger = logging.getLogger(__name__)

MAX_PRACTICAL_ORDER = 5


class IsomorphismResult:
    """Decision plus a bijective Hom witness when the monoids are isomorphic"""

    __slots__ = ("holds", "witness")

    def __init__(self, holds: bool, witness: Optional[Hom] = None):
        self.holds = holds
        self.witness = witness

    def __bool__(self) -> bool:
        return self.holds

    def __repr__(self) -> str:
        return f"IsomorphismResult(holds={self.holds})"


def _power(M: Monoid, x: int, k: int) -> int:
    value = x
    for _ in range(k - 1):
        value = M.rows[value][x]
    return value


def element_profile(M: Monoid, x: int) -> Tuple[int, int]:
    """(index, period) of the cyclic subsemigroup generated by x"""
    seen: Dict[int, int] = {}
    value, k = x, 1
    while value not in seen:
        seen[value] = k
        value = M.rows[value][x]
        k += 1
    index = seen[value]
    return index, k - index


def monoid_invariants(M: Monoid) -> Tuple:
    profiles = tuple(sorted(element_profile(M, x) for x in M.elements))
    return (M.order, len(M.idempotents()), profiles, M.is_commutative(), len(M.units()))


def relabel(M: Monoid, perm: Sequence[int]) -> Monoid:
    """Monoid with element a renamed to perm[a]"""
    p = np.array(perm, dtype=np.int64)
    q = np.argsort(p)
    return Monoid(p[M.table[q][:, q]], int(p[M.identity]), name=M.name)


def identity_swap(M: Monoid) -> List[int]:
    """Permutation exchanging the identity with index 0"""
    perm = list(M.elements)
    perm[0], perm[M.identity] = M.identity, 0
    return perm


def normalize_identity(M: Monoid) -> Monoid:
    if M.identity == 0:
        return M
    return relabel(M, identity_swap(M))


def _canonical_key_and_table(M: Monoid) -> Tuple[Tuple[int, ...], np.ndarray]:
    N = normalize_identity(M)
    T = N.table
    n = N.order
    best_key = None
    best_table = T
    for rest in permutations(range(1, n)):
        p = np.array((0,) + rest, dtype=np.int64)
        q = np.argsort(p)
        candidate = p[T[q][:, q]]
        key = tuple(candidate.ravel().tolist())
        if best_key is None or key < best_key:
            best_key, best_table = key, candidate
    return best_key, best_table


def canonical_key(M: Monoid) -> Tuple[int, ...]:
    return _canonical_key_and_table(M)[0]


def canonical_form(M: Monoid) -> Monoid:
    """Lexicographically least relabeling with the identity at 0"""
    return Monoid(_canonical_key_and_table(M)[1], 0, name=M.name)


def _consistent(T: List[List[int]], n: int, i: int, j: int) -> bool:
    """Check every triple whose products are all known and that reads cell (i, j)"""
    v = T[i][j]
    # cell is (a·b)
    row_v, row_j, row_i = T[v], T[j], T[i]
    for c in range(n):
        lhs = row_v[c]
        w = row_j[c]
        if lhs < 0 or w < 0:
            continue
        rhs = row_i[w]
        if rhs >= 0 and lhs != rhs:
            return False
    # cell is (b·c)
    for a in range(n):
        u = T[a][i]
        if u < 0:
            continue
        lhs = T[u][j]
        rhs = T[a][v]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
    for a in range(n):
        row_a = T[a]
        for b in range(n):
            ab = row_a[b]
            # cell is ((a·b)·c) with a·b = i, c = j
            if ab == i:
                w = T[b][j]
                if w >= 0:
                    rhs = row_a[w]
                    if rhs >= 0 and rhs != v:
                        return False
            # cell is (a·(b·c)) with a = i, b·c = j
            if ab == j:
                u = row_i[a]
                if u >= 0:
                    lhs = T[u][b]
                    if lhs >= 0 and lhs != v:
                        return False
    return True


def _fresh_table(n: int) -> List[List[int]]:
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[0][x] = x
        T[x][0] = x
    return T


def _cells(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, n) for j in range(1, n)]


def _search(T, n, cells, depth, stop) -> Iterator[None]:
    if depth == stop:
        yield None
        return
    i, j = cells[depth]
    for v in range(n):
        T[i][j] = v
        if _consistent(T, n, i, j):
            yield from _search(T, n, cells, depth + 1, stop)
    T[i][j] = -1


def _seeded_table(n: int, prefix: Sequence[int]):
    T = _fresh_table(n)
    cells = _cells(n)
    if len(prefix) > len(cells):
        raise ValueError(f"prefix of length {len(prefix)} exceeds {len(cells)} free cells")
    for depth, v in enumerate(prefix):
        i, j = cells[depth]
        if not 0 <= v < n:
            raise ValueError(f"prefix value {v} outside [0, {n})")
        T[i][j] = v
        if not _consistent(T, n, i, j):
            return None, cells
    return T, cells


def enumeration_prefixes(n: int, depth: int) -> List[Tuple[int, ...]]:
    """Consistent assignments of the first `depth` free cells; the enumeration splits along them"""
    T = _fresh_table(n)
    cells = _cells(n)
    depth = min(depth, len(cells))
    return [
        tuple(T[i][j] for i, j in cells[:depth])
        for _ in _search(T, n, cells, 0, depth)
    ]


def enumerate_monoids(n: int, up_to_iso: bool = False,
                      prefix: Sequence[int] = ()) -> Iterator[Monoid]:
    """
    Stream every monoid table on n elements with identity 0, in lexicographic order.

    With up_to_iso only tables equal to their own canonical form are emitted,
    which is exactly the first member of each isomorphism class in the stream.
    """
    if n < 1:
        raise ValueError(f"order must be at least 1, got {n}")
    if n > MAX_PRACTICAL_ORDER:
        logger.warning(f"⚠️  Enumerating order {n} monoids exceeds the practical bound {MAX_PRACTICAL_ORDER}")

    T, cells = _seeded_table(n, prefix)
    if T is None:
        return
    for _ in _search(T, n, cells, len(prefix), len(cells)):
        M = Monoid([row[:] for row in T], 0)
        if not up_to_iso:
            yield M
            continue
        if canonical_key(M) == tuple(M.table.ravel().tolist()):
            yield M


def _profile_candidates(M: Monoid, x: int, N: Monoid) -> List[int]:
    index, period = element_profile(M, x)
    return [
        y for y in N.elements
        if _power(N, y, index + period) == _power(N, y, index)
    ]


def enumerate_homs(M: Monoid, N: Monoid, surjective_only: bool = False) -> Iterator[Hom]:
    """
    All homomorphisms M → N, by backtracking over images of a generating set of M.

    A choice of generator images extends along right multiplication from the
    identity; every edge m → m·s is checked, which makes the extension a hom.
    """
    if surjective_only and M.order < N.order:
        return
    gens = M.generators()
    choices = [_profile_candidates(M, s, N) for s in gens]
    e_N = N.identity
    for images in cartesian(*choices):
        phi = [-1] * M.order
        phi[M.identity] = e_N
        queue = [M.identity]
        ok = True
        pos = 0
        while ok and pos < len(queue):
            m = queue[pos]
            pos += 1
            row_m = M.rows[m]
            row_phi = N.rows[phi[m]]
            for s, y in zip(gens, images):
                t = row_m[s]
                value = row_phi[y]
                if phi[t] < 0:
                    phi[t] = value
                    queue.append(t)
                elif phi[t] != value:
                    ok = False
                    break
        if not ok:
            continue
        if surjective_only and len(set(phi)) != N.order:
            continue
        yield Hom(M, N, phi, check=False)


def are_isomorphic(M: Monoid, N: Monoid) -> IsomorphismResult:
    """Invariant prefilter, then backtracking over profile-compatible bijections"""
    if monoid_invariants(M) != monoid_invariants(N):
        return IsomorphismResult(False)

    n = M.order
    order = [M.identity] + [x for x in M.elements if x != M.identity]
    n_profiles = {y: element_profile(N, y) for y in N.elements}
    candidates = {
        x: [y for y in N.elements if n_profiles[y] == element_profile(M, x)]
        for x in M.elements
    }
    phi = [-1] * n
    used = [False] * n

    def fits(w: int) -> bool:
        for y in M.elements:
            if phi[y] < 0:
                continue
            for a, b in ((w, y), (y, w)):
                z = M.rows[a][b]
                if phi[z] >= 0 and phi[z] != N.rows[phi[a]][phi[b]]:
                    return False
        for a in M.elements:
            if phi[a] < 0:
                continue
            for b in M.elements:
                if phi[b] >= 0 and M.rows[a][b] == w and phi[w] != N.rows[phi[a]][phi[b]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        options = [N.identity] if k == 0 else candidates[x]
        for y in options:
            if used[y]:
                continue
            phi[x], used[y] = y, True
            if fits(x) and extend(k + 1):
                return True
            phi[x], used[y] = -1, False
        return False

    if extend(0):
        return IsomorphismResult(True, Hom(M, N, phi))
    return IsomorphismResult(False)
