"""Prime-power weights of cycles and the lower-bound audit of a generator.

A cycle of length ``l`` in a permutation of order ``n`` spreads its length
over prime powers: ``sum(w[q] * q) == l``.  Summing the weights of ``q``
over all cycles and comparing with ``b(q)`` gives the point-count lower
bound.  Everything is exact (``Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .constructions import b_value
from .factor import exactly_divides, factorize
from .perm import CycleType

PLAIN = "plain"
COMBINED_2_3 = "combined-2-3"
COMBINED_3_4 = "combined-3-4"


@dataclass(frozen=True)
class WeightVector:
    entries: dict[int, Fraction]
    cycle_length: int
    modulus: int
    rule: str

    def __getitem__(self, q: int) -> Fraction:
        return self.entries.get(q, Fraction(0))

    def total(self) -> Fraction:
        return sum((w * q for q, w in self.entries.items()), Fraction(0))


def weight_vector(l: int, n: int) -> WeightVector:
    if l < 2:
        raise ValueError(f"cycle length must be >= 2, got {l}")
    if n % l:
        raise ValueError(f"cycle length {l} does not divide {n}")
    two_exact = exactly_divides(2, 1, n)
    three_exact = exactly_divides(3, 1, n)
    F = Fraction

    if l == 6:
        if three_exact:
            w = {3: F(2)}
        elif two_exact:
            w = {2: F(3)}
        else:
            w = {4: F(3, 2)}
        rule = "exception-6"
    elif l == 12:
        w = {3: F(4)} if three_exact else {4: F(3)}
        rule = "exception-12"
    elif l in (10, 14):
        p = l // 2
        w = {2: F(1)} if two_exact else {4: F(1, 2)}
        w[p] = F(2 * (p - 1), p)
        rule = "exception-10-14"
    else:
        parts = [p**r for p, r in factorize(l)]
        k = len(parts)
        w = {}
        for q in parts:
            rest = l // q
            if q == 2 and not two_exact:
                w[4] = F(rest, 2 * k)
            else:
                w[q] = F(rest, k)
        rule = "general"
    return WeightVector({q: v for q, v in w.items() if v}, l, n, rule)


@dataclass
class Check:
    label: str
    value: Fraction
    bound: int
    passed: bool


@dataclass
class AuditReport:
    modulus: int
    per_prime_power_sums: dict[int, Fraction]
    branch: dict[int, str]
    checks: list[Check]
    passed: bool
    lower_bound_points: int
    cycle_points: int = 0

    def as_dict(self) -> dict:
        return {
            "n": self.modulus,
            "passed": self.passed,
            "lower_bound_points": self.lower_bound_points,
            "cycle_points": self.cycle_points,
            "sums": {str(q): str(v) for q, v in sorted(self.per_prime_power_sums.items())},
            "branch": {str(q): b for q, b in sorted(self.branch.items())},
            "checks": [
                {"label": c.label, "value": str(c.value), "bound": c.bound, "passed": c.passed}
                for c in self.checks
            ],
        }


def _lengths(ct: CycleType | Sequence[int]) -> list[int]:
    lengths = list(ct.lengths) if isinstance(ct, CycleType) else [int(l) for l in ct]
    if any(l < 1 for l in lengths):
        raise ValueError("cycle lengths must be positive")
    return [l for l in lengths if l >= 2]


def _check_lcm(lengths: list[int], n: int) -> None:
    order = lcm(*lengths) if lengths else 1
    if order != n:
        raise ValueError(f"cycle type has order {order}, expected {n}")


def audit_generator(ct: CycleType | Sequence[int], n: int) -> AuditReport:
    """Check the weight inequalities for a generator of a cyclic group of order n."""
    lengths = _lengths(ct)
    _check_lcm(lengths, n)
    sums: dict[int, Fraction] = {}
    for l in lengths:
        for q, w in weight_vector(l, n).entries.items():
            sums[q] = sums.get(q, Fraction(0)) + w
    S = lambda q: sums.get(q, Fraction(0))

    exact = [p**r for p, r in factorize(n)]
    three = 3 in exact
    checks: list[Check] = []
    branch: dict[int, str] = {}
    bound_total = 0
    for q in exact:
        if q in (2, 4) and three:
            continue
        branch[q] = PLAIN
        checks.append(Check(f"w{q} >= b({q})", S(q), b_value(q), S(q) >= b_value(q)))
        if not (q == 3 and (2 in exact or 4 in exact)):
            bound_total += b_value(q) * q
    if three and 2 in exact:
        branch[2] = branch[3] = COMBINED_2_3
        value = 2 * S(2) + 3 * S(3)
        checks.append(Check("2*w2 + 3*w3 >= 11", value, 11, value >= 11))
        bound_total += 11
    if three and 4 in exact:
        branch[4] = branch[3] = COMBINED_3_4
        value = 4 * S(4) + 3 * S(3)
        checks.append(Check("4*w4 + 3*w3 >= 20", value, 20, value >= 20))
        bound_total += 20
    return AuditReport(
        modulus=n,
        per_prime_power_sums=dict(sorted(sums.items())),
        branch=branch,
        checks=checks,
        passed=all(c.passed for c in checks),
        lower_bound_points=bound_total,
        cycle_points=sum(lengths),
    )


@dataclass
class LemmaReport:
    checks: list[tuple[str, bool, bool, str]] = field(default_factory=list)  # (name, triggered, ok, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok, _ in self.checks)

    def violations(self) -> list[str]:
        return [f"{name}: {detail}" for name, _, ok, detail in self.checks if not ok]


def lemma_constraints(ct: CycleType | Sequence[int], n: int) -> LemmaReport:
    """Necessary conditions on the cycle type of a generator of a cyclic Aut(P).

    * two-cycles rule: each ``p**r`` exactly dividing n, other than 2, divides
      at least two cycle lengths;
    * for p in 3, 5, 7: a p-cycle together with another cycle of length p*k,
      p not dividing k, forces a third cycle of length divisible by p;
    * two 4-cycles force a third cycle of length divisible by 4 or two more
      even cycles.
    """
    lengths = _lengths(ct)
    _check_lcm(lengths, n)
    rep = LemmaReport()
    for p, r in factorize(n):
        q = p**r
        if q == 2:
            continue
        count = sum(1 for l in lengths if l % q == 0)
        rep.checks.append((f"two-cycles[{q}]", True, count >= 2, f"{count} cycle(s) divisible by {q}"))
    for p in (3, 5, 7):
        mult = [l for l in lengths if l % p == 0]
        triggered = False
        if p in lengths:
            rest = list(mult)
            rest.remove(p)
            triggered = any((l // p) % p != 0 for l in rest)
        if triggered:
            rep.checks.append((f"third-cycle[{p}]", True, len(mult) >= 3, f"{len(mult)} cycle(s) divisible by {p}"))
        else:
            rep.checks.append((f"third-cycle[{p}]", False, True, "not triggered"))
    fours = lengths.count(4)
    if fours >= 2:
        rest = list(lengths)
        rest.remove(4)
        rest.remove(4)
        ok = any(l % 4 == 0 for l in rest) or sum(1 for l in rest if l % 2 == 0) >= 2
        rep.checks.append(("two-4-cycles", True, ok, f"remaining lengths {sorted(rest, reverse=True)}"))
    else:
        rep.checks.append(("two-4-cycles", False, True, "not triggered"))
    return rep


def weight_identity_holds(l: int, n: int) -> bool:
    return weight_vector(l, n).total() == l


def support_ok(l: int, n: int) -> bool:
    parts = {p**r for p, r in factorize(l)} | {4}
    return set(weight_vector(l, n).entries) <= parts

