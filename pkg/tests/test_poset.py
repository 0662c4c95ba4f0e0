import json

import pytest
from hypothesis import given, settings

from cyclicposets.poset import (
    CapacityError,
    CycleError,
    antichain,
    chain,
    from_json,
    make_poset,
    opposite,
    ordinal_sum,
    relabel,
    to_dot,
    to_json,
    transitive_reduction,
)
from cyclicposets.search import automorphism_group, are_isomorphic
from conftest import posets, random_poset


def brute_covers(p):
    less = p.less
    n = p.n
    return sorted(
        (x, y)
        for x in range(n)
        for y in range(n)
        if less[x][y] and not any(less[x][z] and less[z][y] for z in range(n))
    )


def test_chain_closure():
    p = make_poset(3, [(0, 1), (1, 2)])
    assert p.lt(0, 2)
    assert p.relations() == [(0, 1), (0, 2), (1, 2)]


def test_antichain_from_no_relations():
    p = make_poset(2, [])
    assert p.num_relations() == 0


@pytest.mark.parametrize("rels", [[(0, 1), (1, 0)], [(0, 1), (1, 2), (2, 0)], [(1, 1)]])
def test_cycle_rejected(rels):
    with pytest.raises(CycleError):
        make_poset(3, rels)


def test_out_of_range():
    with pytest.raises(IndexError):
        make_poset(2, [(0, 2)])


def test_capacity():
    with pytest.raises(CapacityError):
        make_poset(5, [], max_points=4)


def test_reduction_examples():
    assert transitive_reduction(chain(3)) == [(0, 1), (1, 2)]
    assert transitive_reduction(antichain(2)) == []


def test_covers_matrix_matches_edges():
    p = make_poset(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    cov = p.covers
    assert sorted((x, y) for x in range(4) for y in range(4) if cov[x][y]) == p.cover_edges()


def test_opposite_examples():
    v = make_poset(3, [(0, 1), (0, 2)])
    assert opposite(v) == make_poset(3, [(1, 0), (2, 0)])
    assert are_isomorphic(opposite(chain(3)), chain(3))


def test_ordinal_sum_examples():
    pt = antichain(1)
    assert ordinal_sum([pt, pt]) == chain(2)
    assert ordinal_sum([]).n == 0
    assert automorphism_group(ordinal_sum([antichain(2), antichain(2)])).order == 4


@settings(max_examples=150, deadline=None)
@given(posets())
def test_order_axioms_and_reduction_roundtrip(p):
    p.validate()
    assert transitive_reduction(p) == brute_covers(p)
    assert make_poset(p.n, transitive_reduction(p)).down == p.down


@settings(max_examples=100, deadline=None)
@given(posets())
def test_opposite_involution(p):
    q = opposite(p)
    q.validate()
    assert opposite(q) == p
    assert automorphism_group(q).order == automorphism_group(p).order


@settings(max_examples=60, deadline=None)
@given(posets(max_points=5), posets(max_points=5), posets(max_points=5))
def test_ordinal_sum_group_is_product(a, b, c):
    s = ordinal_sum([a, b, c])
    s.validate()
    assert s.n == a.n + b.n + c.n
    orders = [automorphism_group(x).order for x in (a, b, c)]
    assert automorphism_group(s).order == orders[0] * orders[1] * orders[2]


def test_ordinal_sum_group_random_parts(rng):
    for _ in range(40):
        parts = [random_poset(rng.randint(0, 6), rng.random() * 0.5, rng) for _ in range(rng.randint(1, 3))]
        want = 1
        for part in parts:
            want *= automorphism_group(part).order
        assert automorphism_group(ordinal_sum(parts)).order == want


def test_json_roundtrip_writes_sorted_covers():
    p = make_poset(4, [(2, 3), (0, 1), (1, 3), (0, 3)])
    text = to_json(p)
    data = json.loads(text)
    assert data == {"n": 4, "relations": [[0, 1], [1, 3], [2, 3]]}
    assert from_json(text) == p


def test_json_reader_closes():
    p = from_json('{"n": 3, "relations": [[0, 1], [1, 2]]}')
    assert p.lt(0, 2)


@pytest.mark.parametrize("bad", ['{"relations": []}', '{"n": 2, "relations": [[0]]}', "[1, 2]", '{"n": "3"}'])
def test_json_reader_rejects(bad):
    with pytest.raises(ValueError):
        from_json(bad)


def test_dot_edges_point_up_and_rank_by_height():
    p = make_poset(3, [(0, 1), (0, 2)])
    dot = to_dot(p)
    assert "rankdir=BT" in dot
    assert "0 -> 1;" in dot and "0 -> 2;" in dot
    assert "{ rank=same; 1; 2; }" in dot


def test_relabel_is_isomorphic(rng):
    p = random_poset(7, 0.3, rng)
    s = list(range(7))
    rng.shuffle(s)
    q = relabel(p, s)
    q.validate()
    assert q.num_relations() == p.num_relations()
