"""Minimum-distance decoding for cyclic orbit codes with a single
irreducible companion-block generator.

Every codeword intersecting the received space R nontrivially shows up as
a candidate U P^e with x^e = phi(v) phi(u)^(-1) for some pair of nonzero
vectors v in R, u in U, so scanning all pairs and keeping the candidate of
maximal intersection is a full nearest-codeword search. The L_f variant
restricts v to low-support combinations of R's basis and stops as soon as
a candidate is provably the unique nearest codeword.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .analysis import CodeParams, CyclicOrbitCode, analyze
from .errors import DomainError
from .fields import FieldCtx, field_context
from .linalg import Subspace, intersection_dim


@dataclass(frozen=True)
class DecodeResult:
    """Nearest-codeword answer.

    group_exponent is reduced mod the code cardinality. When several
    candidates tie at the maximal intersection the smallest exponent wins
    and unique is False; a distance within the unique-decoding radius
    always comes with unique True.
    """

    codeword: Subspace
    group_exponent: int
    distance: int
    unique: bool
    candidates_examined: int


@lru_cache(maxsize=128)
def _code_info(code: CyclicOrbitCode) -> tuple[FieldCtx, CodeParams]:
    spec = code.block_structure
    if spec is None or len(spec.blocks) != 1 or spec.blocks[0][1] != 1:
        raise DomainError(
            "decoding needs a single irreducible companion-block generator"
        )
    ctx = field_context(spec.blocks[0][0])
    if not ctx.is_irreducible:
        raise DomainError("decoding needs an irreducible generator polynomial")
    params = analyze(code, method="fast")
    return ctx, params


def _check_received(R: Subspace, code: CyclicOrbitCode) -> None:
    if R.q != code.q or R.n != code.n:
        raise DomainError("received space lives in the wrong ambient space")
    if R.dim < 1:
        raise DomainError("received space must be nonzero")


class _CandidateScan:
    """Shared state for one decode: candidate construction, caching by
    exponent mod cardinality, and best tracking."""

    def __init__(self, R: Subspace, code: CyclicOrbitCode):
        self.R = R
        self.code = code
        self.ctx, self.params = _code_info(code)
        self.card = self.params.cardinality
        self.k = code.k
        self.kp = R.dim
        self.examined = 0
        self.cache: dict[int, tuple[Subspace, int]] = {}
        self.best_dim = 0
        self.best_exps: set[int] = set()
        if self.ctx.is_primitive:
            table = self.ctx.dlog_table
            self.u_logs = [table[v] for v in code.start.nonzero_elements()]
            self.row_logs = [table[r] for r in code.start.rows]
        else:
            self.u_elems = list(code.start.nonzero_elements())
            self.u_invs = [self.ctx.inv(u) for u in self.u_elems]

    def _candidate(self, e: int) -> tuple[Subspace, int]:
        key = e % self.card
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        ctx = self.ctx
        if ctx.is_primitive:
            N = ctx.q**ctx.n - 1
            rows = [ctx.x_power((b + key) % N) for b in self.row_logs]
        else:
            xe = ctx.x_power(key)
            rows = [ctx.mul(r, xe) for r in self.code.start.rows]
        W = Subspace.from_rows(self.code.q, self.code.n, rows)
        entry = (W, intersection_dim(self.R, W))
        self.cache[key] = entry
        return entry

    def exponents_for(self, v):
        """Candidate exponents from pairing v with every nonzero u in U.

        Yields one exponent per pair; pairs whose quotient falls outside
        <x> (possible only for non-primitive generators) are counted as
        examined but yield nothing.
        """
        ctx = self.ctx
        if ctx.is_primitive:
            bv = ctx.dlog_table[v]
            N = ctx.q**ctx.n - 1
            for bu in self.u_logs:
                self.examined += 1
                yield (bv - bu) % N
        else:
            for inv_u in self.u_invs:
                self.examined += 1
                b = ctx.x_log(ctx.mul(v, inv_u))
                if b is not None:
                    yield b

    def consider(self, e: int) -> tuple[Subspace, int]:
        W, dim = self._candidate(e)
        key = e % self.card
        if dim > self.best_dim:
            self.best_dim = dim
            self.best_exps = {key}
        elif dim == self.best_dim and dim > 0:
            self.best_exps.add(key)
        return W, dim

    def result(self) -> DecodeResult:
        if self.best_exps:
            exp = min(self.best_exps)
            W, dim = self.cache[exp]
            unique = len(self.best_exps) == 1
        else:
            # no pair produced a candidate: every codeword meets R trivially
            exp = 0
            W, dim = self._candidate(0)
            unique = self.card == 1
        return DecodeResult(
            codeword=W,
            group_exponent=exp,
            distance=self.k + self.kp - 2 * dim,
            unique=unique,
            candidates_examined=self.examined,
        )


def decode_exhaustive(R: Subspace, code: CyclicOrbitCode) -> DecodeResult:
    """Algorithm-style full pair scan: examines exactly
    (q^k - 1)(q^k' - 1) pairs, no early exit. Ambiguity is reported
    through unique=False with the smallest tied exponent."""
    _check_received(R, code)
    scan = _CandidateScan(R, code)
    for v in R.nonzero_elements():
        for e in scan.exponents_for(v):
            scan.consider(e)
    return scan.result()


def lf_set(basis_rows, f: int, q: int) -> list[tuple[int, ...]]:
    """Combinations of the basis with support size <= f+1 and nonzero
    coefficients on the support, smallest support first.

    The count is sum_{i=1}^{f+1} C(k', i) (q-1)^i; a size-f-support
    reading of the same construction is this function at f-1.
    """
    rows = [tuple(int(x) % q for x in r) for r in basis_rows]
    kp = len(rows)
    if not 0 <= f < kp:
        raise DomainError(f"need 0 <= f < k' = {kp}, got f = {f}")
    from .linalg import _rref_rows

    _, pivots = _rref_rows([list(r) for r in rows], q)
    if len(pivots) != kp:
        raise DomainError("basis rows are linearly dependent")
    n = len(rows[0])
    out = []
    for s in range(1, f + 2):
        for idxs in itertools.combinations(range(kp), s):
            for coeffs in itertools.product(range(1, q), repeat=s):
                v = [0] * n
                for c, i in zip(coeffs, idxs):
                    for j, x in enumerate(rows[i]):
                        v[j] = (v[j] + c * x) % q
                out.append(tuple(v))
    return out


def lf_vector_count(q: int, k_prime: int, f: int) -> int:
    """sum_{i=1}^{f+1} C(k', i) (q-1)^i, the loop count of the L_f decoder."""
    return sum(math.comb(k_prime, i) * (q - 1) ** i for i in range(1, f + 2))


def error_capability(code: CyclicOrbitCode, k_prime: int) -> int:
    """floor((k' - k + delta - 1)/2) clamped to [0, k'-1].

    A cardinality-1 code has no minimum distance; everything decodes to
    the single codeword, so the capability degenerates to the maximal
    clamp k' - 1.
    """
    if k_prime < 1:
        raise DomainError("k' must be >= 1")
    _, params = _code_info(code)
    if params.min_distance is None:
        return k_prime - 1
    delta = params.min_distance // 2
    f = (k_prime - code.k + delta - 1) // 2
    return max(0, min(f, k_prime - 1))


def decode_lf(R: Subspace, code: CyclicOrbitCode, f: int | None = None) -> DecodeResult:
    """L_f decoding: pair only low-support combinations of R's basis,
    returning as soon as a candidate is within the unique-decoding radius
    (distance <= delta - 1). With f = error_capability (the default) this
    agrees with decode_exhaustive whenever R is uniquely decodable."""
    _check_received(R, code)
    if f is None:
        f = error_capability(code, R.dim)
    scan = _CandidateScan(R, code)
    delta = None
    if scan.params.min_distance is not None:
        delta = scan.params.min_distance // 2
    k, kp = code.k, R.dim
    # distance <= delta-1 is equivalent to this intersection dimension
    exit_dim = None
    if delta is not None:
        exit_dim = math.ceil((k + kp - delta + 1) / 2)
    for v in lf_set(R.rows, f, code.q):
        for e in scan.exponents_for(v):
            _, dim = scan.consider(e)
            if exit_dim is not None and dim >= exit_dim:
                W, dim = scan.cache[e % scan.card]
                return DecodeResult(
                    codeword=W,
                    group_exponent=e % scan.card,
                    distance=k + kp - 2 * dim,
                    unique=True,
                    candidates_examined=scan.examined,
                )
    return scan.result()
