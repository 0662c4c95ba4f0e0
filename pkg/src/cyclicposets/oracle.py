"""Ground truth by exhaustion: isomorph-free poset enumeration, brute-force
automorphisms, smallest posets with a given cyclic group, and exhaustive
checks of the orbit lemmas over all small invariant configurations.

Enumeration is canonical augmentation.  Every poset on n points arises from
one on n-1 points by adding a new maximal point whose down-set is an ideal.
From each stored parent we add one ideal per orbit of Aut(parent) and keep
the child only when the new point lies in the Aut(child)-orbit of the
canonically chosen maximal point.  Each isomorphism class then appears
exactly once.
"""

from __future__ import annotations

import itertools
import logging
import os
import struct
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, lcm
from pathlib import Path
from typing import BinaryIO, Callable, Iterable, Iterator, Sequence

from .perm import Perm, commute, coprime_powers, cycle_type, format_cycles, perm_order, perm_power
from .poset import CycleError, Poset, _bits, make_poset, relabel
from .search import _UnionFind, _key_bytes, find_generator, poset_from_form, search
from .weights import audit_generator, lemma_constraints

log = logging.getLogger(__name__)

ENV_LIMIT = "CYCLICPOSETS_ENUM_LIMIT"
DEFAULT_LIMIT = 10
BRUTE_FORCE_LIMIT = 10

# unlabeled posets on 0..11 points
KNOWN_COUNTS = (1, 1, 2, 5, 16, 63, 318, 2045, 16999, 183231, 2567284, 46749427)


class LimitExceeded(ValueError):
    pass


def enumeration_limit() -> int:
    return int(os.environ.get(ENV_LIMIT, DEFAULT_LIMIT))


# --- enumeration ------------------------------------------------------------

def ideals(p: Poset) -> list[int]:
    """All down-closed subsets of ``p`` as bitmasks, one per antichain."""
    n = p.n
    comparable = [p.down[v] | p.up[v] | (1 << v) for v in range(n)]
    closed = [p.down[v] | (1 << v) for v in range(n)]
    out: list[int] = []

    def grow(start: int, blocked: int, ideal: int) -> None:
        out.append(ideal)
        for v in range(start, n):
            if not blocked >> v & 1:
                grow(v + 1, blocked | comparable[v], ideal | closed[v])

    grow(0, 0, 0)
    return out


def _map_mask(mask: int, g: Perm) -> int:
    out = 0
    for x in _bits(mask):
        out |= 1 << g[x]
    return out


def _ideal_orbit_reps(p: Poset, gens: list[Perm]) -> list[int]:
    ids = ideals(p)
    if not gens:
        return ids
    uf = _UnionFind(ids)
    for g in gens:
        for m in ids:
            uf.union(m, _map_mask(m, g))
    return [m for m in ids if uf.find(m) == m]


def _max_invariant(p: Poset, v: int) -> tuple:
    """Cheap isomorphism invariant of a maximal point, used to pick the
    canonical point to delete."""
    below = _bits(p.down[v])
    return (
        len(below),
        p.lower_covers[v].bit_count(),
        tuple(sorted((p.down[u].bit_count(), p.up[u].bit_count()) for u in below)),
    )


def _accept(child: Poset) -> bool:
    new = child.n - 1
    maxima = [v for v in range(child.n) if not child.up[v]]
    inv = {v: _max_invariant(child, v) for v in maxima}
    best = max(inv.values())
    if inv[new] != best:
        return False
    tied = [v for v in maxima if inv[v] == best]
    if len(tied) == 1:
        return True
    res = search(child)
    chosen = min(tied, key=lambda v: res.labeling[v])
    if chosen == new:
        return True
    uf = _UnionFind(range(child.n))
    for g in res.generators:
        for x in range(child.n):
            uf.union(x, g[x])
    return uf.find(chosen) == uf.find(new)


def children(parent: Poset) -> list[Poset]:
    """Accepted one-point extensions of ``parent``, in a fixed order."""
    gens = search(parent).generators if parent.n > 1 else []
    n = parent.n
    out = []
    for ideal in _ideal_orbit_reps(parent, gens):
        child = Poset(n + 1, parent.down + (ideal,))
        if _accept(child):
            out.append(child)
    return out


def _children_batch(downs: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    return [c.down for d in downs for c in children(Poset(len(d), d))]


def enumerate_posets(
    n: int,
    limit: int | None = None,
    workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> Iterator[Poset]:
    """One representative per isomorphism class of posets on ``n`` points."""
    limit = enumeration_limit() if limit is None else limit
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds enumeration limit {limit}")
    level = [Poset(0, ())]
    if n == 0:
        yield from level
        return
    for k in range(1, n + 1):
        if k < n:
            level = _extend(level, workers)
            if progress:
                progress(k, len(level))
        else:
            yield from _extend_iter(level, workers)


def _extend(level: list[Poset], workers: int) -> list[Poset]:
    return list(_extend_iter(level, workers))


def _extend_iter(level: list[Poset], workers: int) -> Iterator[Poset]:
    if workers <= 1 or len(level) < 64:
        for parent in level:
            yield from children(parent)
        return
    chunk = max(1, len(level) // (workers * 8))
    batches = [[p.down for p in level[i : i + chunk]] for i in range(0, len(level), chunk)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for downs in ex.map(_children_batch, batches):
            for d in downs:
                yield Poset(len(d), d)


def enumerate_up_to(max_points: int, **kw) -> Iterator[Poset]:
    """All isomorphism classes on 0..max_points points, level by level."""
    workers = kw.get("workers", 1)
    cap = kw.get("limit")
    cap = enumeration_limit() if cap is None else cap
    if max_points > cap:
        raise LimitExceeded(f"{max_points} points exceeds enumeration limit {cap}")
    level = [Poset(0, ())]
    yield from level
    for _ in range(max_points):
        level = _extend(level, workers)
        yield from level


def count_posets(n: int, **kw) -> int:
    return sum(1 for _ in enumerate_posets(n, **kw))


def natural_posets(n: int) -> Iterator[Poset]:
    """Every poset on ``0..n-1`` in which ``x < y`` implies ``x < y`` as
    integers (naturally labeled).  Each isomorphism class has at least one."""
    if n == 0:
        yield Poset(0, ())
        return
    for q in natural_posets(n - 1):
        for ideal in ideals(q):
            yield Poset(n, q.down + (ideal,))


def _brute_key(p: Poset) -> tuple[int, ...]:
    """Least down-set tuple over relabelings that sort points by
    ``(|down|, |up|)``; a complete invariant that uses no refinement."""
    inv = [(p.down[v].bit_count(), p.up[v].bit_count()) for v in range(p.n)]
    blocks: dict[tuple[int, int], list[int]] = {}
    for v in range(p.n):
        blocks.setdefault(inv[v], []).append(v)
    ordered = [blocks[k] for k in sorted(blocks)]
    starts = list(itertools.accumulate([0] + [len(b) for b in ordered]))
    best = None
    for arrangement in itertools.product(*(itertools.permutations(b) for b in ordered)):
        sigma = [0] * p.n
        for start, block in zip(starts, arrangement):
            for offset, v in enumerate(block):
                sigma[v] = start + offset
        key = relabel(p, sigma).down
        if best is None or key < best:
            best = key
    return best


def brute_force_classes(n: int) -> list[Poset]:
    """Isomorphism classes on ``n`` points by labeled generation and
    permutation-minimal dedup; shares nothing with the search code."""
    reps: dict[tuple[int, ...], Poset] = {}
    for p in natural_posets(n):
        reps.setdefault(_brute_key(p), p)
    return list(reps.values())


# --- brute-force automorphisms ----------------------------------------------

def _iter_automorphisms(p: Poset, classes: Sequence[int] | None = None) -> Iterator[Perm]:
    """Every automorphism, optionally restricted to maps preserving ``classes``
    (a class label per point).  Plain backtracking: assign images point by
    point, checking relations against the already-assigned points."""
    n = p.n
    down = p.down
    img = [-1] * n
    used = [False] * n

    def extend(x: int) -> Iterator[Perm]:
        if x == n:
            yield tuple(img)
            return
        for y in range(n):
            if used[y] or (classes is not None and classes[x] != classes[y]):
                continue
            ok = True
            for u in range(x):
                a = img[u]
                if (down[x] >> u & 1) != (down[y] >> a & 1) or (down[u] >> x & 1) != (down[a] >> y & 1):
                    ok = False
                    break
            if ok:
                img[x] = y
                used[y] = True
                yield from extend(x + 1)
                used[y] = False
        img[x] = -1

    yield from extend(0)


def brute_force_automorphisms(p: Poset, max_points: int = BRUTE_FORCE_LIMIT) -> list[Perm]:
    if p.n > max_points:
        raise LimitExceeded(f"brute force is capped at {max_points} points")
    return sorted(_iter_automorphisms(p))


def naive_automorphisms(p: Poset) -> list[Perm]:
    """Filter all n! permutations; only for very small posets."""
    return [s for s in itertools.permutations(range(p.n)) if relabel(p, s).down == p.down]


# --- cyclic groups among small posets ---------------------------------------

def cyclic_order(p: Poset) -> int | None:
    """``|Aut(p)|`` when Aut(p) is cyclic, else None."""
    res = search(p)
    if res.order == 1:
        return 1
    gens = res.generators
    if all(commute(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :]):
        if lcm(*(perm_order(g) for g in gens)) == res.order:
            return res.order
    return None


@dataclass
class EnumerationRecord:
    n: int
    total: int
    with_cyclic_aut: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "with_cyclic_aut": {str(k): v for k, v in sorted(self.with_cyclic_aut.items())},
        }


def enumeration_record(n: int, cyclic: bool = True, **kw) -> EnumerationRecord:
    total = 0
    counts: Counter[int] = Counter()
    for p in enumerate_posets(n, **kw):
        total += 1
        if cyclic:
            m = cyclic_order(p)
            if m is not None:
                counts[m] += 1
    return EnumerationRecord(n, total, dict(counts))


def min_points_with_cyclic_aut(m: int, limit: int, **kw) -> int | None:
    cap = kw.get("limit")
    cap = enumeration_limit() if cap is None else cap
    if limit > cap:
        raise LimitExceeded(f"limit {limit} exceeds enumeration limit {cap}")
    for p in enumerate_up_to(limit, limit=cap, workers=kw.get("workers", 1)):
        if cyclic_order(p) == m:
            return p.n
    return None


# --- orbit lemmas -------------------------------------------------------------

@dataclass
class LemmaCase:
    description: str
    poset: Poset
    witness: Perm | None

    @property
    def ok(self) -> bool:
        return self.witness is not None


@dataclass
class LemmaVerification:
    name: str
    cases: list[LemmaCase]

    @property
    def counterexamples(self) -> list[LemmaCase]:
        return [c for c in self.cases if not c.ok]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "lemma": self.name,
            "configurations": len(self.cases),
            "counterexamples": [c.description for c in self.counterexamples],
            "passed": self.passed,
        }


def _non_induced_witness(p: Poset, orbits: Sequence[int], g: Perm) -> Perm | None:
    """An orbit-preserving automorphism outside <g>, or None."""
    induced = {perm_power(g, k) for k in range(perm_order(g))}
    for h in _iter_automorphisms(p, orbits):
        if h not in induced:
            return h
    return None


def _invariant_relations(src: list[int], dst: list[int], diffs: Iterable[int]) -> list[tuple[int, int]]:
    """Pairs ``src[i] < dst[j]`` with ``(j - i) mod gcd(|src|, |dst|)`` in diffs."""
    d = gcd(len(src), len(dst))
    ds = set(diffs)
    return [(a, b) for i, a in enumerate(src) for j, b in enumerate(dst) if (j - i) % d in ds]


def _subsets(k: int) -> list[tuple[int, ...]]:
    return [tuple(i for i in range(k) if mask >> i & 1) for mask in range(1 << k)]


def _pair_options(src: list[int], dst: list[int]) -> list[tuple[str, list[tuple[int, int]]]]:
    """Every invariant relation between two orbits: none, or one direction with a
    non-empty difference set."""
    d = gcd(len(src), len(dst))
    opts = [("none", [])]
    for s in _subsets(d)[1:]:
        opts.append((f"<{set(s)}", _invariant_relations(src, dst, s)))
        opts.append((f">{set(s)}", [(b, a) for a, b in _invariant_relations(src, dst, s)]))
    return opts


def verify_lemma_two_orbits(p: int) -> LemmaVerification:
    """Z_p acting on two regular orbits, p in 3, 5, 7."""
    if p not in (3, 5, 7):
        raise ValueError("p must be 3, 5 or 7")
    a = list(range(p))
    b = list(range(p, 2 * p))
    g = tuple([(i + 1) % p for i in range(p)] + [p + (j + 1) % p for j in range(p)])
    orbits = [0] * p + [1] * p
    cases = []
    for desc, rels in _pair_options(a, b):
        poset = make_poset(2 * p, rels)
        assert relabel(poset, g).down == poset.down
        cases.append(LemmaCase(f"Z{p} {desc}", poset, _non_induced_witness(poset, orbits, g)))
    return LemmaVerification(f"two-orbits-Z{p}", cases)


def verify_lemma_z4() -> LemmaVerification:
    """Z_4 acting with orbits (4, 4) or (4, 4, 2)."""
    a, b, c = [0, 1, 2, 3], [4, 5, 6, 7], [8, 9]
    cases = []
    g8 = tuple([1, 2, 3, 0, 5, 6, 7, 4])
    for desc, rels in _pair_options(a, b):
        poset = make_poset(8, rels)
        cases.append(LemmaCase(f"(4,4) ab{desc}", poset, _non_induced_witness(poset, [0] * 4 + [1] * 4, g8)))
    g10 = g8 + (9, 8)
    orbits = [0] * 4 + [1] * 4 + [2] * 2
    for (dab, rab), (dac, rac), (dbc, rbc) in itertools.product(
        _pair_options(a, b), _pair_options(a, c), _pair_options(b, c)
    ):
        try:
            poset = make_poset(10, rab + rac + rbc)
        except CycleError:
            continue
        if relabel(poset, g10).down != poset.down:
            raise AssertionError("invariant relation produced a non-invariant closure")
        desc = f"(4,4,2) ab{dab} ac{dac} bc{dbc}"
        cases.append(LemmaCase(desc, poset, _non_induced_witness(poset, orbits, g10)))
    return LemmaVerification("two-orbits-Z4", cases)


# --- generator cycle-type constraints ----------------------------------------

@dataclass
class ConstraintSweep:
    limit: int
    posets: int = 0
    cyclic_by_order: dict[int, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "limit": self.limit,
            "posets": self.posets,
            "cyclic_by_order": {str(k): v for k, v in sorted(self.cyclic_by_order.items())},
            "violations": self.violations,
            "passed": self.passed,
        }


def verify_lemma_constraints_exhaustive(limit: int, **kw) -> ConstraintSweep:
    sweep = ConstraintSweep(limit)
    counts: Counter[int] = Counter()
    for p in enumerate_up_to(limit, **kw):
        sweep.posets += 1
        m = cyclic_order(p)
        if m is None:
            continue
        counts[m] += 1
        if m < 2:
            continue
        for gen in coprime_powers(find_generator(p)):
            ct = cycle_type(gen)
            audit = audit_generator(ct, m)
            lemmas = lemma_constraints(ct, m)
            if not audit.passed or audit.lower_bound_points > p.n or not lemmas.passed:
                sweep.violations.append(
                    f"n={p.n} order={m} generator={format_cycles(gen)} "
                    f"audit={audit.passed} lemmas={lemmas.violations()}"
                )
    sweep.cyclic_by_order = dict(counts)
    return sweep


# --- on-disk cache of canonical forms ----------------------------------------
# Format: a sequence of records, each a 4-byte big-endian length followed by
# that many bytes of canonical form (see search.canonical_form).

def write_cache(stream: BinaryIO, posets: Iterable[Poset]) -> int:
    count = 0
    for p in posets:
        form = _key_bytes(p.n, search(p).key)
        stream.write(struct.pack(">I", len(form)))
        stream.write(form)
        count += 1
    return count


def read_cache(stream: BinaryIO) -> Iterator[Poset]:
    while True:
        head = stream.read(4)
        if not head:
            return
        if len(head) != 4:
            raise ValueError("truncated cache record header")
        (length,) = struct.unpack(">I", head)
        form = stream.read(length)
        if len(form) != length:
            raise ValueError("truncated cache record")
        yield poset_from_form(form)


def cached_level(n: int, cache_dir: str | os.PathLike, **kw) -> list[Poset]:
    """Posets on ``n`` points, read from ``cache_dir/posets-<n>.bin`` when
    present, otherwise enumerated and written there."""
    path = Path(cache_dir) / f"posets-{n}.bin"
    if path.exists():
        with path.open("rb") as fh:
            return list(read_cache(fh))
    level = list(enumerate_posets(n, **kw))
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as fh:
        write_cache(fh, level)
    return level
