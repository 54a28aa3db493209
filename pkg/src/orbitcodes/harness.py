"""Channel simulation and randomized code search.

Randomness policy: stdlib random.Random (Mersenne Twister, stable across
platforms), never the global instance. Multi-trial operations derive the
trial-t stream as Random(seed ^ t), so serial and parallel runs see
identical streams and merge deterministically by trial index.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .analysis import (
    CyclicOrbitCode,
    _regime,
    analyze,
    analyze_naive,
    codeword,
    make_code,
)
from .canonical import ElementaryDivisorSpec, build_generator
from .decoder import _code_info, decode_exhaustive, decode_lf
from .errors import DomainError, InternalInvariantError
from .fields import Poly, PrimeField
from .linalg import Subspace, _rref_rows, subspace_sum


@dataclass(frozen=True)
class ChannelConfig:
    """erasures: dimensions dropped from the sent space; errors: random
    dimensions adjoined outside it; seed: 64-bit stream seed."""

    erasures: int
    errors: int
    seed: int


def _random_full_rank_rows(rng: random.Random, q: int, rows: int, cols: int):
    """Rejection-sample a full-rank rows x cols matrix; returns the raw
    rows plus their RREF (free canonicalization)."""
    if rows == 0:
        return [], []
    while True:
        raw = [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]
        reduced, pivots = _rref_rows([list(r) for r in raw], q)
        if len(pivots) == rows:
            return raw, (reduced, pivots)


def _transmit(V: Subspace, erasures: int, errors: int, rng: random.Random) -> Subspace:
    q, n, k = V.q, V.n, V.dim
    if erasures < 0 or errors < 0:
        raise DomainError("erasures and errors must be >= 0")
    if erasures > k:
        raise DomainError(f"cannot erase {erasures} dimensions from a {k}-dim space")
    keep = k - erasures
    # V' = random keep-dim subspace of V via a random full-rank coefficient matrix
    coeff, _ = _random_full_rank_rows(rng, q, keep, k)
    r_rows = [
        tuple(sum(c * row[j] for c, row in zip(cr, V.rows)) % q for j in range(n))
        for cr in coeff
    ]
    # each error vector is sampled outside span(V + R built so far), so the
    # received space has dimension keep+errors and meets V exactly in V'
    blocked = subspace_sum(V, Subspace.from_rows(q, n, r_rows))
    for _ in range(errors):
        if blocked.dim == n:
            raise DomainError("ambient space exhausted: no room for an error vector")
        while True:
            v = tuple(rng.randrange(q) for _ in range(n))
            if not blocked.contains(v):
                break
        r_rows.append(v)
        blocked = subspace_sum(blocked, Subspace.from_rows(q, n, [v]))
    m = len(r_rows)
    if m == 0:
        return Subspace.from_rows(q, n, [])
    mix, _ = _random_full_rank_rows(rng, q, m, m)
    mixed = [
        tuple(sum(c * row[j] for c, row in zip(mr, r_rows)) % q for j in range(n))
        for mr in mix
    ]
    return Subspace.from_rows(q, n, mixed)


def transmit(V: Subspace, cfg: ChannelConfig) -> Subspace:
    """Send V through the erasure+error channel; deterministic per seed.

    Stream order: erasure coefficient matrix, then each error vector, then
    the remixing matrix."""
    return _transmit(V, cfg.erasures, cfg.errors, random.Random(cfg.seed))


@dataclass
class SimulationStats:
    """Aggregated decode outcomes over simulate_decoding trials."""

    trials: int = 0
    success_exhaustive: int = 0
    success_lf: int = 0
    unique_exhaustive: int = 0
    unique_lf: int = 0
    examined_exhaustive: int = 0
    examined_lf: int = 0
    agree: int = 0

    def merge(self, other: "SimulationStats") -> None:
        for f in (
            "trials",
            "success_exhaustive",
            "success_lf",
            "unique_exhaustive",
            "unique_lf",
            "examined_exhaustive",
            "examined_lf",
            "agree",
        ):
            setattr(self, f, getattr(self, f) + getattr(other, f))

    def to_json_dict(self) -> dict:
        t = max(self.trials, 1)
        return {
            "trials": self.trials,
            "success_rate_exhaustive": self.success_exhaustive / t,
            "success_rate_lf": self.success_lf / t,
            "unique_rate_exhaustive": self.unique_exhaustive / t,
            "unique_rate_lf": self.unique_lf / t,
            "avg_examined_exhaustive": self.examined_exhaustive / t,
            "avg_examined_lf": self.examined_lf / t,
            "decoder_agreement_rate": self.agree / t,
        }


def _simulate_range(code: CyclicOrbitCode, cfg: ChannelConfig, lo: int, hi: int) -> SimulationStats:
    _, params = _code_info(code)
    card = params.cardinality
    stats = SimulationStats()
    for t in range(lo, hi):
        rng = random.Random(cfg.seed ^ t)
        exponent = rng.randrange(card)
        V = codeword(code, exponent)
        R = _transmit(V, cfg.erasures, cfg.errors, rng)
        res_ex = decode_exhaustive(R, code)
        res_lf = decode_lf(R, code)
        stats.trials += 1
        stats.success_exhaustive += res_ex.codeword == V
        stats.success_lf += res_lf.codeword == V
        stats.unique_exhaustive += res_ex.unique
        stats.unique_lf += res_lf.unique
        stats.examined_exhaustive += res_ex.candidates_examined
        stats.examined_lf += res_lf.candidates_examined
        stats.agree += res_ex.codeword == res_lf.codeword
    return stats


def simulate_decoding(
    code: CyclicOrbitCode, cfg: ChannelConfig, trials: int, jobs: int = 1
) -> SimulationStats:
    """Per trial: uniform random codeword, transmit, decode both ways.

    Trial t draws from Random(cfg.seed ^ t): first the codeword exponent,
    then the transmit stream. Deterministic for any jobs value."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if jobs <= 1 or trials < 4 * jobs:
        return _simulate_range(code, cfg, 0, trials)
    stats = SimulationStats()
    bounds = [(i * trials) // jobs for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_simulate_range, code, cfg, lo, hi)
            for lo, hi in zip(bounds, bounds[1:])
        ]
        for fut in futures:
            stats.merge(fut.result())
    return stats


# -- randomized code search -------------------------------------------------


@dataclass(frozen=True)
class CellRecord:
    """Best code found for one target minimum distance."""

    distance: int
    cardinality: int
    trial: int
    start_rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a seeded random search over start subspaces.

    Cells map each observed minimum distance to the best (largest)
    cardinality found, with the witnessing trial index and start rows.
    Every cell is re-verified against the naive oracle before the report
    is constructed.
    """

    q: int
    k: int
    n: int
    blocks: tuple[tuple[tuple[int, ...], int], ...]
    generator_order: int
    trials: int
    seed: int
    cells: tuple[CellRecord, ...] = field(default_factory=tuple)

    def cell(self, distance: int) -> CellRecord | None:
        for c in self.cells:
            if c.distance == distance:
                return c
        return None

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "blocks": [
                {"poly": " ".join(str(c) for c in coeffs), "exp": e}
                for coeffs, e in self.blocks
            ],
            "generator_order": self.generator_order,
            "trials": self.trials,
            "seed": self.seed,
            "cells": [
                {
                    "distance": c.distance,
                    "cardinality": c.cardinality,
                    "trial": c.trial,
                    "start": [" ".join(str(x) for x in r) for r in c.start_rows],
                }
                for c in self.cells
            ],
        }

    def to_csv_rows(self) -> list[list]:
        header = ["q", "n", "k", "generator_order", "distance", "cardinality", "trial"]
        rows = [header]
        for c in self.cells:
            rows.append(
                [self.q, self.n, self.k, self.generator_order, c.distance, c.cardinality, c.trial]
            )
        return rows


def _better(a: tuple[int, int], b: tuple[int, int] | None) -> bool:
    """Is (cardinality, trial) a an improvement over b? Larger cardinality
    wins; equal cardinality keeps the earliest trial."""
    if b is None:
        return True
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _search_range(
    q: int,
    k: int,
    n: int,
    block_data: tuple[tuple[tuple[int, ...], int], ...],
    lo: int,
    hi: int,
    seed: int,
) -> dict[int, tuple[int, int, tuple]]:
    field_ = PrimeField(q)
    spec = ElementaryDivisorSpec.make(
        field_, [(Poly(field_, coeffs), e) for coeffs, e in block_data]
    )
    gen = build_generator(spec)
    regime = _regime(spec)
    best: dict[int, tuple[int, int, tuple]] = {}
    for t in range(lo, hi):
        rng = random.Random(seed ^ t)
        _, (rows, pivots) = _random_full_rank_rows(rng, q, k, n)
        start = Subspace(q, n, tuple(rows), pivots)
        code = CyclicOrbitCode(gen, start, spec, regime)
        params = analyze(code, method="fast")
        if params.min_distance is None:
            continue
        d = params.min_distance
        cur = best.get(d)
        if _better((params.cardinality, t), cur and (cur[0], cur[1])):
            best[d] = (params.cardinality, t, start.rows)
    return best


def random_search(
    q: int,
    k: int,
    n: int,
    generator_spec: ElementaryDivisorSpec | Poly,
    trials: int,
    seed: int,
    jobs: int = 1,
) -> SearchReport:
    """Sample `trials` random k-dim starts (full-rank k x n matrices,
    canonicalized), fast-analyze each, and keep the best cardinality per
    minimum distance. Reproducible per seed for any jobs value."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if isinstance(generator_spec, Poly):
        generator_spec = ElementaryDivisorSpec.make(
            generator_spec.field, [(generator_spec, 1)]
        )
    if generator_spec.n != n:
        raise DomainError(
            f"generator acts on dimension {generator_spec.n}, expected {n}"
        )
    if generator_spec.field.q != q:
        raise DomainError("generator field does not match q")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}")
    block_data = tuple((p.coeffs, e) for p, e in generator_spec.blocks)
    if jobs <= 1 or trials < 4 * jobs:
        best = _search_range(q, k, n, block_data, 0, trials, seed)
    else:
        bounds = [(i * trials) // jobs for i in range(jobs + 1)]
        best = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_search_range, q, k, n, block_data, lo, hi, seed)
                for lo, hi in zip(bounds, bounds[1:])
            ]
            for fut in futures:
                for d, (card, t, rows) in fut.result().items():
                    cur = best.get(d)
                    if _better((card, t), cur and (cur[0], cur[1])):
                        best[d] = (card, t, rows)

    # naive re-verification of every cell before it enters the report
    cells = []
    for d in sorted(best):
        card, t, rows = best[d]
        check = analyze_naive(make_code(generator_spec, rows))
        if check.cardinality != card or check.min_distance != d:
            raise InternalInvariantError(
                f"fast analyzer reported ({card}, {d}) but the oracle found "
                f"({check.cardinality}, {check.min_distance})"
            )
        cells.append(CellRecord(d, card, t, rows))
    return SearchReport(
        q=q,
        k=k,
        n=n,
        blocks=block_data,
        generator_order=generator_spec.generator_order(),
        trials=trials,
        seed=seed,
        cells=tuple(cells),
    )
