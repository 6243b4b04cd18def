import random

import pytest
import sympy
from hypothesis import HealthCheck, settings

from fermat_mld.polyring import Polynomial, Ring

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def r2():
    return Ring(2, 32003, names=("x", "y"))


@pytest.fixture
def r3():
    return Ring(3, 32003, names=("x", "y", "z"))


def to_sympy(f: Polynomial, symbols):
    expr = 0
    for e, c in f.terms:
        term = sympy.Integer(c)
        for s, k in zip(symbols, e):
            term *= s ** k
        expr += term
    return expr


def from_sympy_poly(poly: sympy.Poly, ring: Ring) -> Polynomial:
    p = ring.p
    return Polynomial(ring, {tuple(m): int(c) % p for m, c in poly.terms()})


def random_poly(rng: random.Random, ring: Ring, nterms: int, max_deg: int,
                homogeneous_degree=None) -> Polynomial:
    terms = {}
    for _ in range(nterms):
        if homogeneous_degree is None:
            e = [rng.randint(0, max_deg) for _ in range(ring.nvars)]
        else:
            e = [0] * ring.nvars
            for _ in range(homogeneous_degree):
                e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.randrange(ring.p)
    return Polynomial(ring, terms)


# One summary line per acceptance criterion, shown at the end of every run.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
