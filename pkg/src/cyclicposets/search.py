"""Automorphism groups and canonical forms by individualization-refinement.

The search tree is the usual one: refine an ordered partition of the points
to an equitable one, pick the first non-singleton cell, individualize each of
its points in turn and recurse.  Leaves are discrete partitions, i.e.
labelings.  Two leaves giving the same relabeled order matrix differ by an
automorphism.  Found automorphisms prune children lying in one orbit of the
pointwise stabilizer of the current path, and a leaf equivalent to the first
leaf lets the search jump back to the first path.

Refinement order:

1. initial color key ``(height, depth, |down|, |up|, #lower covers, #upper covers)``
2. repeat: new color = (old color, sorted colors of lower covers, sorted
   colors of upper covers) until the number of cells is stable.

Cells are always ranked by their sorted keys, so the ordered partition, and
therefore the canonical form, depends only on the isomorphism type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm, prod
from typing import Iterator

from .factor import factorize
from .perm import (
    Perm,
    commute,
    compose,
    cycle_type,
    element_of_order_lcm,
    identity,
    inverse,
    perm_order,
)
from .poset import Poset, _bits

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    pass


class NotCyclic(ValueError):
    pass


def _rank(keys: list) -> tuple[list[int], int]:
    distinct = sorted(set(keys))
    idx = {k: i for i, k in enumerate(distinct)}
    return [idx[k] for k in keys], len(distinct)


def initial_colors(p: Poset) -> tuple[list[int], int]:
    lc, uc = p.lower_covers, p.upper_covers
    keys = [
        (
            p.heights[v],
            p.depths[v],
            p.down[v].bit_count(),
            p.up[v].bit_count(),
            lc[v].bit_count(),
            uc[v].bit_count(),
        )
        for v in range(p.n)
    ]
    return _rank(keys)


def refine(col: list[int], k: int, lower: list[list[int]], upper: list[list[int]]) -> tuple[list[int], int]:
    n = len(col)
    while k < n:
        sigs = [
            (col[v], tuple(sorted([col[u] for u in lower[v]])), tuple(sorted([col[u] for u in upper[v]])))
            for v in range(n)
        ]
        new, k2 = _rank(sigs)
        if k2 == k:
            break
        col, k = new, k2
    return col, k


def individualize(col: list[int], v: int) -> tuple[list[int], int]:
    c = col[v]
    keys = [2 * x + (1 if x == c and u != v else 0) for u, x in enumerate(col)]
    return _rank(keys)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smallest point stays the representative
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class SearchResult:
    n: int
    generators: list[Perm]
    order: int
    labeling: list[int]  # point -> canonical position
    key: tuple[int, ...]  # rows of the canonically relabeled strict-order matrix
    leaves: int = 0


class _Search:
    def __init__(self, p: Poset):
        self.p = p
        self.n = p.n
        self.lower = [_bits(m) for m in p.lower_covers]
        self.upper = [_bits(m) for m in p.upper_covers]
        self.ups = [_bits(m) for m in p.up]
        self.leaves: dict[tuple[int, ...], list[int]] = {}
        self.gens: list[Perm] = []
        self.first_path: list[int] | None = None
        self.first_key: tuple[int, ...] | None = None
        self.best_key: tuple[int, ...] | None = None
        self.best_lab: list[int] | None = None
        self.orbit_sizes: list[int] = []

    def run(self) -> SearchResult:
        col, k = initial_colors(self.p)
        col, k = refine(col, k, self.lower, self.upper)
        self._node(col, k, [], True)
        return SearchResult(
            self.n,
            self.gens,
            prod(self.orbit_sizes),
            self.best_lab,
            self.best_key,
            len(self.leaves),
        )

    def _leaf(self, col: list[int], path: list[int]) -> int | None:
        n = self.n
        rows = [0] * n
        top = n - 1
        for x in range(n):
            r = 0
            for y in self.ups[x]:
                r |= 1 << (top - col[y])
            rows[col[x]] = r
        key = tuple(rows)
        if self.first_key is None:
            self.first_key = key
            self.first_path = list(path)
            self.best_key, self.best_lab = key, col
            self.leaves[key] = col
            return None
        prev = self.leaves.get(key)
        if prev is not None:
            # prev^-1 o col maps the point at this leaf's position i to the point at prev's position i
            at = inverse(prev)
            g = tuple(at[col[x]] for x in range(n))
            if g != identity(n):
                self.gens.append(g)
            if key == self.first_key:
                common = 0
                for a, b in zip(path, self.first_path):
                    if a != b:
                        break
                    common += 1
                return common
            return None
        self.leaves[key] = col
        if key < self.best_key:
            self.best_key, self.best_lab = key, col
        return None

    def _node(self, col: list[int], k: int, path: list[int], on_first: bool) -> int | None:
        if k == self.n:
            return self._leaf(col, path)
        depth = len(path)
        counts = [0] * k
        for c in col:
            counts[c] += 1
        target = next(c for c in range(k) if counts[c] > 1)
        cell = [v for v in range(self.n) if col[v] == target]
        uf = _UnionFind(cell)
        seen_gens = 0

        def absorb():
            nonlocal seen_gens
            while seen_gens < len(self.gens):
                g = self.gens[seen_gens]
                seen_gens += 1
                if all(g[x] == x for x in path):
                    for x in cell:
                        uf.union(x, g[x])

        for v in cell:
            absorb()
            if uf.find(v) != v:
                continue
            ccol, ck = individualize(col, v)
            ccol, ck = refine(ccol, ck, self.lower, self.upper)
            r = self._node(ccol, ck, path + [v], on_first and v == cell[0])
            if r is not None and r < depth:
                return r
        if on_first:
            absorb()
            root = uf.find(cell[0])
            self.orbit_sizes.append(sum(1 for x in cell if uf.find(x) == root))
        return None


def search(p: Poset) -> SearchResult:
    return _Search(p).run()


# --- groups ----------------------------------------------------------------

def generate_group(gens: list[Perm], n: int, cap: int = DEFAULT_CAP) -> list[Perm]:
    """All elements of the group generated by ``gens`` (breadth-first closure)."""
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = compose(g, h)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > cap:
                        raise CapExceeded(f"group has more than {cap} elements")
                    nxt.append(x)
        frontier = nxt
    return sorted(seen)


@dataclass
class GroupDescription:
    n: int
    order: int
    generators: list[Perm]
    elements: list[Perm] | None = None
    has_element_of_order: dict[int, bool | None] = field(default_factory=dict)

    @property
    def is_abelian(self) -> bool:
        g = self.generators
        return all(commute(a, b) for i, a in enumerate(g) for b in g[i + 1 :])

    @property
    def is_cyclic(self) -> bool:
        if self.order == 1:
            return True
        flag = self.has_element_of_order.get(self.order)
        if flag is not None:
            return flag
        return self.is_abelian and lcm(*(perm_order(g) for g in self.generators)) == self.order

    def __contains__(self, s) -> bool:
        if self.elements is None:
            raise CapExceeded("elements were not materialized")
        return tuple(s) in set(self.elements)


def automorphism_group(
    p: Poset,
    cap: int = DEFAULT_CAP,
    require_elements: bool = False,
    result: SearchResult | None = None,
) -> GroupDescription:
    res = result if result is not None else search(p)
    gd = GroupDescription(p.n, res.order, list(res.generators))
    if res.order <= cap:
        gd.elements = generate_group(gd.generators, p.n, cap)
        if len(gd.elements) != res.order:
            raise AssertionError(f"closure has {len(gd.elements)} elements, search says {res.order}")
        orders = {perm_order(s) for s in gd.elements}
        gd.has_element_of_order = {d: d in orders for d in _divisors_fast(res.order)}
    else:
        if require_elements:
            raise CapExceeded(f"|Aut| = {res.order} exceeds cap {cap}")
        if gd.is_abelian:
            exp = lcm(*(perm_order(g) for g in gd.generators))
            gd.has_element_of_order = {d: exp % d == 0 for d in _divisors_fast(res.order)}
        else:
            gd.has_element_of_order = {res.order: False} | {
                d: None for d in _divisors_fast(res.order) if d != res.order
            }
    return gd


def _divisors_fast(m: int) -> list[int]:
    divs = [1]
    for p, r in factorize(m):
        divs = [d * p**i for d in divs for i in range(r + 1)]
    return sorted(divs)


def is_cyclic_aut_of_order(p: Poset, m: int) -> bool:
    res = search(p)
    if res.order != m:
        return False
    if m == 1:
        return True
    gens = res.generators
    return all(commute(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :]) and lcm(
        *(perm_order(g) for g in gens)
    ) == m


def find_generator(p: Poset) -> Perm:
    """An automorphism whose order equals ``|Aut(p)|``."""
    res = search(p)
    if res.order == 1:
        return identity(p.n)
    gens = res.generators
    if not all(commute(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :]):
        raise NotCyclic(f"Aut has order {res.order} and is not abelian")
    g = element_of_order_lcm(gens, p.n)
    if perm_order(g) != res.order:
        raise NotCyclic(f"Aut has order {res.order}, largest element order {perm_order(g)}")
    return g


def canonical_labeling(p: Poset) -> list[int]:
    return search(p).labeling


def _key_bytes(n: int, key: tuple[int, ...]) -> bytes:
    big = 0
    for row in key:
        big = (big << n) | row
    return n.to_bytes(2, "big") + big.to_bytes((n * n + 7) // 8, "big")


def canonical_form(p: Poset) -> bytes:
    """Byte string equal for two posets exactly when they are isomorphic.

    Two-byte big-endian point count, then the row-major bits of the
    lexicographically least strict-order matrix over the search leaves.
    """
    return _key_bytes(p.n, search(p).key)


def poset_from_form(form: bytes) -> Poset:
    n = int.from_bytes(form[:2], "big")
    big = int.from_bytes(form[2:], "big")
    rows = [(big >> (n * (n - 1 - i))) & ((1 << n) - 1) for i in range(n)]
    down = [0] * n
    for x, row in enumerate(rows):
        for j in range(n):
            if row >> (n - 1 - j) & 1:
                down[j] |= 1 << x
    return Poset(n, tuple(down))


def are_isomorphic(p: Poset, q: Poset) -> bool:
    if p.n != q.n or p.num_relations() != q.num_relations():
        return False
    return canonical_form(p) == canonical_form(q)


def isomorphism(p: Poset, q: Poset) -> Perm | None:
    """A map ``f`` with ``x < y`` in p iff ``f(x) < f(y)`` in q, or None."""
    if p.n != q.n:
        return None
    rp, rq = search(p), search(q)
    if rp.key != rq.key:
        return None
    at = inverse(rq.labeling)
    return tuple(at[rp.labeling[x]] for x in range(p.n))


def automorphisms(p: Poset) -> Iterator[Perm]:
    yield from automorphism_group(p, require_elements=True).elements


def generator_cycle_type(p: Poset):
    return cycle_type(find_generator(p))
