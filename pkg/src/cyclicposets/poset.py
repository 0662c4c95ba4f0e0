"""Finite strict partial orders stored as per-point bitsets.

Points are ``0..n-1``.  ``down[y]`` is an int whose bit ``x`` is set exactly
when ``x < y``; ``up`` is the transpose.  Python ints act as machine-word
bitsets of arbitrary width, so row operations stay bit-parallel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

MAX_POINTS = 1024


class CycleError(ValueError):
    """The relation contains a directed cycle, so it has no strict closure."""


class CapacityError(ValueError):
    """Point count exceeds the configured limit."""


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class Poset:
    n: int
    down: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.down == other.down

    def __hash__(self) -> int:
        return hash((self.n, self.down))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.cover_edges()})"

    @cached_property
    def up(self) -> tuple[int, ...]:
        up = [0] * self.n
        for y, mask in enumerate(self.down):
            for x in _bits(mask):
                up[x] |= 1 << y
        return tuple(up)

    @cached_property
    def lower_covers(self) -> tuple[int, ...]:
        # x is covered by y iff x < y and x is below no other element of down[y]
        res = []
        for y, mask in enumerate(self.down):
            below = 0
            for z in _bits(mask):
                below |= self.down[z]
            res.append(mask & ~below)
        return tuple(res)

    @cached_property
    def upper_covers(self) -> tuple[int, ...]:
        up = [0] * self.n
        for y, mask in enumerate(self.lower_covers):
            for x in _bits(mask):
                up[x] |= 1 << y
        return tuple(up)

    def lt(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    @property
    def less(self) -> list[list[bool]]:
        return [[self.lt(x, y) for y in range(self.n)] for x in range(self.n)]

    @property
    def covers(self) -> list[list[bool]]:
        lc = self.lower_covers
        return [[bool(lc[y] >> x & 1) for y in range(self.n)] for x in range(self.n)]

    def relations(self) -> list[tuple[int, int]]:
        """All pairs ``(x, y)`` with ``x < y``, sorted."""
        return sorted((x, y) for y in range(self.n) for x in _bits(self.down[y]))

    def cover_edges(self) -> list[tuple[int, int]]:
        return sorted((x, y) for y in range(self.n) for x in _bits(self.lower_covers[y]))

    def num_relations(self) -> int:
        return sum(m.bit_count() for m in self.down)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each point (minimal points: 0)."""
        h = [-1] * self.n
        for v in self.topological_order():
            h[v] = max((h[u] + 1 for u in _bits(self.lower_covers[v])), default=0)
        return tuple(h)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        d = [-1] * self.n
        for v in reversed(self.topological_order()):
            d[v] = max((d[u] + 1 for u in _bits(self.upper_covers[v])), default=0)
        return tuple(d)

    def topological_order(self) -> list[int]:
        # sorting by down-set size is a linear extension
        return sorted(range(self.n), key=lambda v: (self.down[v].bit_count(), v))

    def minimal_points(self) -> list[int]:
        return [v for v in range(self.n) if not self.down[v]]

    def maximal_points(self) -> list[int]:
        return [v for v in range(self.n) if not self.up[v]]

    def validate(self) -> None:
        """Raise ``ValueError`` unless the order axioms hold."""
        full = (1 << self.n) - 1
        for y, mask in enumerate(self.down):
            if mask & ~full:
                raise ValueError(f"point {y} has out-of-range predecessors")
            if mask >> y & 1:
                raise ValueError(f"irreflexivity fails at {y}")
            for x in _bits(mask):
                if self.down[x] >> y & 1:
                    raise ValueError(f"antisymmetry fails at ({x}, {y})")
                if self.down[x] & ~mask:
                    raise ValueError(f"transitivity fails below {y}")


def _close(n: int, preds: list[int]) -> tuple[int, ...]:
    """Transitive closure of a digraph given as predecessor bitsets.

    Processes points in Kahn order so each row is the OR of finished rows;
    a leftover point means a directed cycle.
    """
    succs: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for y, mask in enumerate(preds):
        for x in _bits(mask):
            succs[x].append(y)
            indeg[y] += 1
    down = list(preds)
    stack = [v for v in range(n) if indeg[v] == 0]
    done = 0
    while stack:
        x = stack.pop()
        done += 1
        row = down[x] | (1 << x)
        for y in succs[x]:
            down[y] |= row
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    if done != n:
        raise CycleError("relation has a directed cycle")
    return tuple(down)


def make_poset(
    n: int,
    relations: Iterable[Sequence[int]] = (),
    labels: Sequence[str] | None = None,
    max_points: int = MAX_POINTS,
) -> Poset:
    """Transitively close ``relations`` (pairs ``(a, b)`` meaning ``a < b``)."""
    if n < 0:
        raise ValueError("point count must be nonnegative")
    if n > max_points:
        raise CapacityError(f"{n} points exceeds limit {max_points}")
    preds = [0] * n
    for a, b in relations:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"relation ({a}, {b}) outside 0..{n - 1}")
        if a == b:
            raise CycleError(f"reflexive pair ({a}, {a})")
        preds[b] |= 1 << a
    return Poset(n, _close(n, preds), tuple(labels) if labels is not None else None)


def from_down_sets(down: Sequence[int], labels: Sequence[str] | None = None) -> Poset:
    """Wrap already-closed down-set bitsets, checking the order axioms."""
    p = Poset(len(down), tuple(down), tuple(labels) if labels is not None else None)
    p.validate()
    return p


def transitive_reduction(p: Poset) -> list[tuple[int, int]]:
    return p.cover_edges()


def chain(k: int) -> Poset:
    return Poset(k, tuple((1 << i) - 1 for i in range(k)))


def antichain(k: int) -> Poset:
    return Poset(k, (0,) * k)


def relabel(p: Poset, sigma: Sequence[int]) -> Poset:
    """Image of ``p`` under the bijection ``x -> sigma[x]``."""
    down = [0] * p.n
    for y in range(p.n):
        m = 0
        for x in _bits(p.down[y]):
            m |= 1 << sigma[x]
        down[sigma[y]] = m
    return Poset(p.n, tuple(down))


def opposite(p: Poset) -> Poset:
    return Poset(p.n, p.up, p.labels)


def ordinal_sum(parts: Sequence[Poset]) -> Poset:
    down: list[int] = []
    offset = 0
    for part in parts:
        below = (1 << offset) - 1
        down.extend((m << offset) | below for m in part.down)
        offset += part.n
    labels = None
    if parts and all(part.labels is not None for part in parts):
        labels = tuple(lab for part in parts for lab in part.labels)
    return Poset(offset, tuple(down), labels)


def disjoint_union(parts: Sequence[Poset]) -> Poset:
    down: list[int] = []
    offset = 0
    for part in parts:
        down.extend(m << offset for m in part.down)
        offset += part.n
    return Poset(offset, tuple(down))


def is_automorphism(p: Poset, s: Sequence[int]) -> bool:
    if len(s) != p.n:
        raise ValueError(f"permutation has length {len(s)}, poset has {p.n} points")
    if sorted(s) != list(range(p.n)):
        raise ValueError("not a permutation")
    return relabel(p, s).down == p.down


# --- serialization ---------------------------------------------------------

def to_json(p: Poset) -> str:
    return json.dumps({"n": p.n, "relations": [list(e) for e in p.cover_edges()]})


def from_json(text: str) -> Poset:
    data = json.loads(text)
    if not isinstance(data, dict) or "n" not in data:
        raise ValueError("expected an object with keys 'n' and 'relations'")
    n = data["n"]
    rels = data.get("relations", [])
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("'n' must be an integer")
    pairs = []
    for r in rels:
        if not (isinstance(r, list) and len(r) == 2 and all(isinstance(v, int) for v in r)):
            raise ValueError(f"bad relation {r!r}")
        pairs.append((r[0], r[1]))
    return make_poset(n, pairs)


def to_dot(p: Poset, name: str = "P") -> str:
    """Hasse diagram in DOT, lower points at the bottom, one rank per height."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for v in range(p.n):
        label = p.labels[v] if p.labels is not None else str(v)
        lines.append(f'  {v} [label="{label}"];')
    by_height: dict[int, list[int]] = {}
    for v, h in enumerate(p.heights):
        by_height.setdefault(h, []).append(v)
    for h in sorted(by_height):
        lines.append("  { rank=same; " + " ".join(f"{v};" for v in by_height[h]) + " }")
    for x, y in p.cover_edges():
        lines.append(f"  {x} -> {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
