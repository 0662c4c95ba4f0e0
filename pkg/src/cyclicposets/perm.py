"""Permutations as tuples of images: ``s[x]`` is the image of ``x``."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from .factor import factorize

Perm = tuple[int, ...]


@dataclass(frozen=True)
class CycleType:
    lengths: tuple[int, ...]  # non-trivial cycle lengths, descending
    fixed: int

    @property
    def n(self) -> int:
        return sum(self.lengths) + self.fixed

    @property
    def order(self) -> int:
        return lcm(*self.lengths) if self.lengths else 1

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.lengths)) + "}"

    @classmethod
    def of(cls, lengths: Sequence[int], fixed: int = 0) -> "CycleType":
        if any(l < 1 for l in lengths):
            raise ValueError("cycle lengths must be positive")
        fixed += sum(1 for l in lengths if l == 1)
        return cls(tuple(sorted((l for l in lengths if l >= 2), reverse=True)), fixed)


def check_perm(s: Sequence[int]) -> Perm:
    t = tuple(s)
    if sorted(t) != list(range(len(t))):
        raise ValueError(f"not a permutation of 0..{len(t) - 1}: {t}")
    return t


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``a`` after ``b``: x -> a[b[x]]."""
    return tuple(a[x] for x in b)


def inverse(s: Sequence[int]) -> Perm:
    inv = [0] * len(s)
    for x, y in enumerate(s):
        inv[y] = x
    return tuple(inv)


def cycles(s: Sequence[int]) -> list[tuple[int, ...]]:
    """Non-trivial cycles, each starting at its smallest point."""
    seen = [False] * len(s)
    out = []
    for start in range(len(s)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = s[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = s[x]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(s: Sequence[int]) -> CycleType:
    cs = cycles(s)
    return CycleType(tuple(sorted((len(c) for c in cs), reverse=True)), len(s) - sum(map(len, cs)))


def perm_order(s: Sequence[int]) -> int:
    return cycle_type(s).order


def perm_power(s: Sequence[int], m: int) -> Perm:
    """``s`` composed with itself ``m`` times; negative ``m`` uses the inverse."""
    out = list(range(len(s)))
    seen = [False] * len(s)
    for start in range(len(s)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = s[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = s[x]
        k = len(cyc)
        for i, v in enumerate(cyc):
            out[v] = cyc[(i + m) % k]
    return tuple(out)


def format_cycles(s: Sequence[int]) -> str:
    cs = cycles(s)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def _p_part(m: int, p: int) -> int:
    q = 1
    while m % p == 0:
        m //= p
        q *= p
    return q


def element_of_order_lcm(gens: Sequence[Perm], n: int) -> Perm:
    """Element of order ``lcm(orders of gens)`` in the abelian group they generate.

    For each prime pick the generator with the largest p-part of its order,
    power it down to that p-part, and multiply the pieces.
    """
    orders = [perm_order(g) for g in gens]
    target = lcm(*orders) if orders else 1
    result = identity(n)
    for p, _ in factorize(target):
        best = max(range(len(gens)), key=lambda i: _p_part(orders[i], p))
        q = _p_part(orders[best], p)
        piece = perm_power(gens[best], orders[best] // q)
        result = compose(piece, result)
    return result


def commute(a: Sequence[int], b: Sequence[int]) -> bool:
    return compose(a, b) == compose(b, a)


def coprime_powers(s: Sequence[int]) -> list[Perm]:
    """All generators of the cyclic group generated by ``s``."""
    m = perm_order(s)
    return [perm_power(s, k) for k in range(1, m + 1) if gcd(k, m) == 1]
