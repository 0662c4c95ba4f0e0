import pytest

from cyclicposets.constructions import (
    b_value,
    beta,
    circulant_two_level,
    exactly_divides,
    factorize,
    frucht_poset,
    minimal_poset,
    prime_power_poset,
    z12_poset,
)
from cyclicposets.factor import prime_power_parts
from cyclicposets.oracle import brute_force_automorphisms, naive_automorphisms
from cyclicposets.poset import CapacityError, antichain, ordinal_sum
from cyclicposets.search import automorphism_group, is_cyclic_aut_of_order


def brute_cover_count(p):
    less = p.less
    n = p.n
    return sum(
        1
        for x in range(n)
        for y in range(n)
        if less[x][y] and not any(less[x][z] and less[z][y] for z in range(n))
    )


def test_factorize():
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(1).factors == ()
    assert factorize(360).factors == ((2, 3), (3, 2), (5, 1))
    with pytest.raises(ValueError):
        factorize(0)


def test_exactly_divides():
    assert exactly_divides(2, 1, 6)
    assert not exactly_divides(2, 1, 12)
    assert exactly_divides(3, 1, 12)
    assert exactly_divides(2, 2, 12)


def test_b_values():
    assert b_value(1) == 0
    assert b_value(2) == 1
    assert [b_value(q) for q in (3, 4, 5, 7)] == [3, 3, 3, 3]
    assert [b_value(q) for q in (8, 9, 11, 16, 25, 27, 49)] == [2] * 7
    with pytest.raises(ValueError):
        b_value(6)


def test_beta_values():
    assert beta(12) == 20
    assert beta(6) == 11
    assert beta(1) == 0 and beta(2) == 2 and beta(8) == 16
    # b(4)*4 + b(3)*3 + b(5)*5 - 1
    assert beta(60) == 3 * 4 + 3 * 3 + 3 * 5 - 1 == 35


def _beta_by_hand(n):
    """Second evaluation of the point-count formula, from trial division."""
    total, m, p = 0, n, 2
    exps = {}
    while m > 1:
        while m % p == 0:
            exps[p] = exps.get(p, 0) + 1
            m //= p
        p += 1
    for p, r in exps.items():
        q = p**r
        total += q * (0 if q == 1 else 1 if q == 2 else 3 if q in (3, 4, 5, 7) else 2)
    if exps.get(3) == 1 and exps.get(2) == 2:
        total -= 1
    return total


def test_beta_matches_independent_evaluation():
    assert all(beta(n) == _beta_by_hand(n) for n in range(1, 2001))


def test_beta_additive_on_coprime_parts():
    for a in range(1, 80):
        for b in range(1, 80):
            if _gcd(a, b) != 1:
                continue
            corrected = lambda n: exactly_divides(3, 1, n) and exactly_divides(2, 2, n)
            if corrected(a * b) or corrected(a) or corrected(b):
                continue
            assert beta(a * b) == beta(a) + beta(b)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def test_frucht_examples():
    for n, points in ((3, 9), (4, 12), (5, 15), (7, 21)):
        p = frucht_poset(n)
        assert p.n == points
        assert is_cyclic_aut_of_order(p, n)
    assert len(brute_force_automorphisms(frucht_poset(3))) == 3
    with pytest.raises(ValueError):
        frucht_poset(2)


def test_frucht3_cover_edges_by_brute_force():
    p = frucht_poset(3)
    assert brute_cover_count(p) == len(p.cover_edges()) == 9


def test_frucht_labeling():
    p = frucht_poset(4)
    assert p.lt(0, 1) and p.lt(1, 2) and p.lt(0, 5) and p.lt(9, 2)
    assert p.labels[3 * 2 + 1] == "(2,1)"


def test_circulant_examples():
    p = circulant_two_level(8, (0, 1, 2, 4))
    assert p.n == 16 and is_cyclic_aut_of_order(p, 8)
    assert is_cyclic_aut_of_order(circulant_two_level(9, (0, 1, 2, 4)), 9)
    three = circulant_two_level(3, (0,))
    assert len(naive_automorphisms(three)) == 6
    assert automorphism_group(three).order == 6


def test_circulant_relation_rule():
    p = circulant_two_level(10, (0, 1, 2, 4))
    for i in range(10):
        for j in range(10):
            assert p.lt(i, 10 + j) == ((j - i) % 10 in (0, 1, 2, 4))
            assert not p.lt(i, j) and not p.lt(10 + i, 10 + j)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_frucht_aut_exact(n):
    assert automorphism_group(frucht_poset(n)).order == n


@pytest.mark.parametrize("n", range(8, 65))
def test_circulant_aut_exact(n):
    g = automorphism_group(circulant_two_level(n, (0, 1, 2, 4)))
    assert g.order == n and g.is_cyclic


def test_prime_power_examples():
    p = prime_power_poset(2, 1)
    assert p.n == 2 and automorphism_group(p).order == 2
    p = prime_power_poset(2, 3)
    assert p.n == 16 and is_cyclic_aut_of_order(p, 8)
    p = prime_power_poset(3, 2)
    assert p.n == 18 and is_cyclic_aut_of_order(p, 9)
    assert prime_power_poset(5, 0).n == 0
    with pytest.raises(ValueError):
        prime_power_poset(4, 1)


def test_prime_powers_up_to_64():
    for q in range(2, 65):
        parts = prime_power_parts(q)
        if parts is None:
            continue
        p = prime_power_poset(*parts)
        assert p.n == b_value(q) * q
        assert is_cyclic_aut_of_order(p, q), q


def test_prime_power_capacity():
    with pytest.raises(CapacityError):
        prime_power_poset(1031, 1)


def test_z12():
    p = z12_poset()
    assert p.n == 20
    g = automorphism_group(p)
    assert g.order == 12 and g.has_element_of_order[12]
    # generated relations survive closure, nothing within a level
    assert p.lt(0, 6) and p.lt(0, 7) and p.lt(0, 9) and not p.lt(0, 8)
    assert p.lt(12, 16) and p.lt(12, 17) and not p.lt(12, 18)
    assert p.lt(16, 6) and not p.lt(16, 7)
    assert p.lt(12, 0) and p.lt(12, 2) and not p.lt(12, 1)
    assert all(p.lt(i, j) for i in range(12, 16) for j in range(6, 12))


def test_minimal_examples():
    assert minimal_poset(12) == z12_poset()
    six = minimal_poset(6)
    assert six == ordinal_sum([antichain(2), frucht_poset(3)])
    assert six.n == 11 and is_cyclic_aut_of_order(six, 6)
    assert minimal_poset(1).n == 0
    forty = minimal_poset(40)
    assert forty.n == 2 * 8 + 3 * 5 == 31
    assert is_cyclic_aut_of_order(forty, 40)


def test_minimal_z12_slot():
    p = minimal_poset(60)
    assert p.n == 35
    assert p.down[:20] == z12_poset().down


def test_minimal_point_counts():
    assert all(minimal_poset(n).n == beta(n) for n in range(1, 201))


@pytest.mark.parametrize("n", range(1, 61))
def test_minimal_cyclic(n):
    assert is_cyclic_aut_of_order(minimal_poset(n), n)
