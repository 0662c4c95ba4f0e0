"""Integer factorization and prime-power helpers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]
    value: int

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def prime_powers(self) -> list[int]:
        return [p**r for p, r in self.factors]


def factorize(n: int) -> Factorization:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n!r}")
    m, out, p = n, [], 2
    while p * p <= m:
        if m % p == 0:
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            out.append((p, r))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return Factorization(tuple(out), n)


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p).factors == ((p, 1),)


def prime_power_parts(q: int) -> tuple[int, int] | None:
    """``(p, r)`` with ``q == p**r`` and r >= 1, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q).factors
    return f[0] if len(f) == 1 else None


def exactly_divides(p: int, r: int, n: int) -> bool:
    """True iff ``p**r`` divides ``n`` and ``p**(r+1)`` does not."""
    if r < 1:
        raise ValueError("exponent must be >= 1")
    q = p**r
    return n % q == 0 and n % (q * p) != 0


def q_exactly_divides(q: int, n: int) -> bool:
    parts = prime_power_parts(q)
    if parts is None:
        raise ValueError(f"{q} is not a prime power")
    return exactly_divides(parts[0], parts[1], n)
