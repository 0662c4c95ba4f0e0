import random
import time

import pytest
from hypothesis import strategies as st

from cyclicposets.poset import make_poset

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def random_poset(n, density, rng):
    rel = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = list(range(n))
    rng.shuffle(perm)
    return make_poset(n, [(perm[a], perm[b]) for a, b in rel])


@st.composite
def posets(draw, max_points=8):
    n = draw(st.integers(0, max_points))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    return make_poset(n, [(perm[a], perm[b]) for a, b in chosen])


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture
def criterion():
    def record(name, ok, detail=""):
        ACCEPTANCE[name] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


class Levels(dict):
    elapsed: float = 0.0


@pytest.fixture(scope="session")
def levels():
    """Isomorphism-class representatives on 0..9 points, built once and timed."""
    from cyclicposets.oracle import enumerate_up_to

    out = Levels()
    start = time.perf_counter()
    for p in enumerate_up_to(9):
        out.setdefault(p.n, []).append(p)
    out.elapsed = time.perf_counter() - start
    return out
