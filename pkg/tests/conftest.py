import itertools
import sys

import pytest
from hypothesis import settings, strategies as st

from reesmult.hilbert import DEFAULT_CACHE
from reesmult.lattice import ideal_from_gens, maximal_ideal, numerical_semigroup, polynomial_local

settings.register_profile("repo", deadline=None, max_examples=60)
settings.load_profile("repo")

SEMIGROUPS = [(2, 3), (3, 4), (3, 5), (4, 5, 7), (4, 6, 7), (5, 6, 7, 8)]


@pytest.fixture(autouse=True)
def _fresh_default_cache():
    DEFAULT_CACHE._data.clear()
    yield


def semigroup_elements(gens, bound):
    """Semigroup members below ``bound`` by closing {0} under adding generators."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for a in gens:
                t = s + a
                if t < bound and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


@st.composite
def polynomial_ideals(draw, d=None, m_primary=True, bound=5, max_extra=3):
    """Monomial ideals of a polynomial ring; m-primary ones contain a pure power of each variable."""
    d = draw(st.integers(1, 3)) if d is None else d
    ring = polynomial_local(d)
    gens = []
    if m_primary:
        for i in range(d):
            e = draw(st.integers(1, bound))
            gens.append(tuple(e if j == i else 0 for j in range(d)))
    vec = st.tuples(*[st.integers(0, bound) for _ in range(d)]).filter(any)
    gens += draw(st.lists(vec, min_size=0 if m_primary else 1, max_size=max_extra))
    return ideal_from_gens(ring, gens)


@st.composite
def semigroup_ideals(draw):
    gens = draw(st.sampled_from(SEMIGROUPS))
    ring = numerical_semigroup(*gens)
    members = sorted(s for s in semigroup_elements(gens, 20) if s > 0)
    values = draw(st.lists(st.sampled_from(members), min_size=1, max_size=4))
    return ideal_from_gens(ring, values)


def any_ideals():
    return st.one_of(polynomial_ideals(), semigroup_ideals())


def brute_colength_polynomial(gens, d, box):
    """Count points of [0, box)^d divisible by no generator."""
    count = 0
    for m in itertools.product(range(box), repeat=d):
        if not any(all(a <= b for a, b in zip(g, m)) for g in gens):
            count += 1
    return count


def brute_colength_semigroup(sgens, ideal_gens, bound=80):
    members = semigroup_elements(sgens, bound)
    in_ideal = {v + s for v in ideal_gens for s in members if v + s < bound}
    return len(members - in_ideal)


def pl(d):
    return polynomial_local(d)


def mx(ring):
    return maximal_ideal(ring)


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance lines collected by ``test_acceptance.py``."""
    module = sys.modules.get("test_acceptance")
    if module is None or not module.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
