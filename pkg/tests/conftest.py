import random
import time
from fractions import Fraction

import hypothesis
import pytest

from nilpoly.mpoly import MPoly, make_layout
from nilpoly.polymap import PolyMap
from nilpoly.unitri import UniTri

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.load_profile("ci")


def random_poly(rng: random.Random, N: int, deg: int, coeff: int = 4, exact: bool = False, blocks=None):
    """Random polynomial of total degree <= deg in N variables (== deg if exact)."""
    blocks = blocks or make_layout(("t", N))
    terms = {}
    for _ in range(rng.randint(1, 4)):
        d = rng.randint(0, deg)
        exps = [0] * N
        for _ in range(d):
            exps[rng.randrange(N)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-coeff, coeff), rng.choice([1, 1, 1, 2, 3]))
    if exact and deg >= 0:
        exps = [0] * N
        for _ in range(deg):
            exps[rng.randrange(N)] += 1
        terms[tuple(exps)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    return MPoly(terms, blocks)


def random_polymap(rng: random.Random, n: int, N: int = 1, deg: int = 2, nonidentity: bool = True,
                   degree_of=None):
    """Random map; ``degree_of(i, j)`` overrides the per-entry degree cap."""
    while True:
        entries = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                cap = deg if degree_of is None else degree_of(i, j)
                if cap is None or rng.random() < 0.15:
                    continue
                entries[i, j] = random_poly(rng, N, cap)
        f = PolyMap.from_entries(n, entries, N=N)
        if not nonidentity or not f.is_identity():
            return f


def random_unitri(rng: random.Random, n: int, span: int = 5) -> UniTri:
    entries = {
        (i, j): Fraction(rng.randint(-span, span), rng.randint(1, 4))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    }
    return UniTri(n, entries)


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def t():
    return MPoly.var(0, make_layout(("t", 1)))


@pytest.fixture
def t12():
    L = make_layout(("t", 2))
    return MPoly.var(0, L), MPoly.var(1, L)


# acceptance reporting: one line per criterion in the terminal summary

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((marker.args[0], marker.args[1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} [{status}] {title} ({duration:.2f}s)")
