"""The extremal posets with cyclic automorphism group, and the point counts b, beta.

Fixed labelings:

* ``frucht_poset(n)``: point ``(i, level)`` is ``3*i + level``.
* ``circulant_two_level(n, S)``: lower level ``i`` is ``i``, upper ``j'`` is ``n + j``.
* ``z12_poset()``: A = 0..5, A' = 6..11, B = 12..15, B' = 16..19.
* ``minimal_poset(n)``: parts stacked bottom to top by ascending prime; when
  3 and 4 both exactly divide n, the 20-point Z12 poset takes the slot of the
  factor 2 and the factor-3 part is dropped.
"""

from __future__ import annotations

from typing import Iterable

from .factor import Factorization, exactly_divides, factorize, is_prime, prime_power_parts
from .poset import MAX_POINTS, CapacityError, Poset, antichain, make_poset, ordinal_sum

__all__ = [
    "Factorization",
    "factorize",
    "exactly_divides",
    "b_value",
    "beta",
    "frucht_poset",
    "circulant_two_level",
    "prime_power_poset",
    "z12_poset",
    "minimal_poset",
    "DIFFERENCE_SET",
]

DIFFERENCE_SET = (0, 1, 2, 4)
_THREE_POINT_PRIMES = {3, 4, 5, 7}


def b_value(q: int) -> int:
    if q == 1:
        return 0
    if prime_power_parts(q) is None:
        raise ValueError(f"b is defined on 1 and prime powers, got {q}")
    if q == 2:
        return 1
    if q in _THREE_POINT_PRIMES:
        return 3
    return 2


def _twelve_correction(n: int) -> bool:
    return exactly_divides(3, 1, n) and exactly_divides(2, 2, n)


def beta(n: int) -> int:
    """Fewest points of a poset whose automorphism group is cyclic of order n."""
    if n < 1:
        raise ValueError("n must be positive")
    total = sum(b_value(p**r) * p**r for p, r in factorize(n))
    return total - 1 if _twelve_correction(n) else total


def frucht_poset(n: int) -> Poset:
    if n < 3:
        raise ValueError("the three-level fence needs n >= 3")
    rels = []
    for i in range(n):
        rels += [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * ((i + 1) % n) + 2)]
    labels = [f"({i},{lev})" for i in range(n) for lev in range(3)]
    return make_poset(3 * n, rels, labels)


def circulant_two_level(n: int, s: Iterable[int]) -> Poset:
    if n < 1:
        raise ValueError("n must be positive")
    if 2 * n > MAX_POINTS:
        raise CapacityError(f"{2 * n} points exceeds limit {MAX_POINTS}")
    diffs = {d % n for d in s}
    down = [0] * (2 * n)
    for j in range(n):
        down[n + j] = sum(1 << ((j - d) % n) for d in diffs)
    labels = [str(i) for i in range(n)] + [f"{j}'" for j in range(n)]
    return Poset(2 * n, tuple(down), tuple(labels))


def prime_power_poset(p: int, r: int) -> Poset:
    if r < 0:
        raise ValueError("exponent must be >= 0")
    if r == 0:
        return Poset(0, ())
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p**r
    if b_value(q) * q > MAX_POINTS:
        raise CapacityError(f"Z_{q} needs {b_value(q) * q} points, limit is {MAX_POINTS}")
    if q == 2:
        return antichain(2)
    if q in _THREE_POINT_PRIMES:
        return frucht_poset(q)
    return circulant_two_level(q, DIFFERENCE_SET)


def z12_poset() -> Poset:
    a = lambda i: i % 6
    a1 = lambda j: 6 + j % 6
    b = lambda i: 12 + i % 4
    b1 = lambda j: 16 + j % 4
    rels = []
    for i in range(6):
        for j in range(6):
            if (j - i) % 6 in (0, 1, 3):
                rels.append((a(i), a1(j)))
    for i in range(4):
        for j in range(4):
            if (j - i) % 4 in (0, 1):
                rels.append((b(i), b1(j)))
    for i in range(4):
        for j in range(6):
            if (j - i) % 2 == 0:
                rels.append((b1(i), a1(j)))
                rels.append((b(i), a(j)))
            rels.append((b(i), a1(j)))
    labels = [str(i) for i in range(6)] + [f"{j}'" for j in range(6)]
    labels += [f"{i}''" for i in range(4)] + [f"{i}'''" for i in range(4)]
    return make_poset(20, rels, labels)


def minimal_poset(n: int) -> Poset:
    """Ordinal sum of prime-power pieces; ``beta(n)`` points, Aut cyclic of order n."""
    if n < 1:
        raise ValueError("n must be positive")
    factors = list(factorize(n))
    if _twelve_correction(n):
        parts = [z12_poset()] + [prime_power_poset(p, r) for p, r in factors if p not in (2, 3)]
    else:
        parts = [prime_power_poset(p, r) for p, r in factors]
    if sum(part.n for part in parts) > MAX_POINTS:
        raise CapacityError(f"minimal poset for {n} exceeds {MAX_POINTS} points")
    return ordinal_sum(parts)
