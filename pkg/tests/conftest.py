"""Shared fixtures and small independent oracles for the test suite."""

import random
from itertools import product

import pytest

from orbitcodes import ElementaryDivisorSpec, Poly, PrimeField, Subspace


def rand_full_rank(rng, q, k, n):
    """Rejection-sample a full-rank k x n start, canonicalized."""
    while True:
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        S = Subspace.from_rows(q, n, rows)
        if S.dim == k:
            return S


def rand_vector(rng, q, n):
    return tuple(rng.randrange(q) for _ in range(n))


def span_size(rows, q):
    """Brute-force span size; independent of the library's rank routine."""
    n = len(rows[0]) if rows else 0
    seen = set()
    for coeffs in product(range(q), repeat=len(rows)):
        v = tuple(
            sum(c * row[j] for c, row in zip(coeffs, rows)) % q for j in range(n)
        )
        seen.add(v)
    return len(seen)


def poly_of(q, coeffs):
    return Poly.make(PrimeField(q), coeffs)


def single_block(p):
    return ElementaryDivisorSpec.make(p.field, [(p, 1)])


# fixed small polynomial zoo used across suites
P2 = PrimeField(2)
P3 = PrimeField(3)

X4_X_1 = poly_of(2, [1, 1, 0, 0, 1])            # primitive, order 15
X4_NONPRIM = poly_of(2, [1, 1, 1, 1, 1])        # irreducible, order 5
X6_X_1 = poly_of(2, [1, 1, 0, 0, 0, 0, 1])      # primitive, order 63
X2_X_1 = poly_of(2, [1, 1, 1])                  # primitive quadratic, order 3
X3_X_1 = poly_of(2, [1, 1, 0, 1])               # primitive cubic, order 7
X2_1_F3 = poly_of(3, [1, 0, 1])                 # irreducible over F_3, order 4
X2_X_2_F3 = poly_of(3, [2, 1, 1])               # primitive over F_3, order 8


@pytest.fixture
def rng():
    return random.Random(0xC0DE)


ACCEPTANCE_LABELS = {
    1: "spread golden examples",
    2: "non-primitive golden example",
    3: "block construction examples",
    4: "table reproduction by seeded search",
    5: "analyzer equals oracle",
    6: "decoder soundness within radius",
    7: "decoder loop-count law",
    8: "distance distribution duality",
    9: "invariant property suites",
}


def pytest_terminal_summary(terminalreporter):
    """One verdict line per acceptance criterion at the end of the run."""
    verdicts = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                num = int(nodeid.rsplit("_", 1)[1])
                verdicts[num] = "PASS" if status == "passed" else "FAIL"
    if verdicts:
        terminalreporter.write_line("")
        for num in sorted(verdicts):
            label = ACCEPTANCE_LABELS.get(num, "criterion")
            terminalreporter.write_line(f"ACCEPTANCE {num} {label}: {verdicts[num]}")
