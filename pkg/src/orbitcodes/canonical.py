"""Rational-canonical generator construction and matrix-type classification.

A cyclic subgroup of GL_n(F_q) is determined up to conjugacy by the "type"
of any generator: for each irreducible factor p of the characteristic
polynomial, the partition formed by the exponents of its elementary
divisors, together with the multiplicative order of p. This module builds
block-diagonal generators from elementary-divisor data and recovers the
type of an arbitrary invertible matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InternalInvariantError, SingularMatrixError
from .fields import (
    Poly,
    PrimeField,
    irreducible_polys,
    is_irreducible,
    poly_order,
)
from .linalg import Mat, companion_matrix

# Classification relies on exhaustive factor search; keep inputs desk-sized.
MAX_CLASSIFY_DIM = 12


def poly_pow(p: Poly, e: int) -> Poly:
    out = Poly.make(p.field, [1])
    for _ in range(e):
        out = out * p
    return out


def _ceil_log(q: int, e: int) -> int:
    """Least t with q^t >= e."""
    t = 0
    while q**t < e:
        t += 1
    return t


@dataclass(frozen=True)
class ElementaryDivisorSpec:
    """Block data for a generator: (p, e) pairs, p monic irreducible, e >= 1.

    Repeated pairs are allowed; the implied ambient dimension is
    sum(deg(p) * e).
    """

    field: PrimeField
    blocks: tuple[tuple[Poly, int], ...]

    @classmethod
    def make(cls, field: PrimeField, blocks) -> "ElementaryDivisorSpec":
        checked = []
        for p, e in blocks:
            p = p.monic()
            if p.field != field:
                raise DomainError("block polynomial over the wrong field")
            if not is_irreducible(p):
                raise DomainError(f"block polynomial {p} is reducible")
            if e < 1:
                raise DomainError(f"block exponent must be >= 1, got {e}")
            checked.append((p, int(e)))
        if not checked:
            raise DomainError("spec needs at least one block")
        return cls(field, tuple(checked))

    @property
    def n(self) -> int:
        return sum(p.degree * e for p, e in self.blocks)

    @property
    def block_degrees(self) -> tuple[int, ...]:
        return tuple(p.degree * e for p, e in self.blocks)

    def block_order(self, i: int) -> int:
        """ord(p^e) = ord(p) * q^ceil(log_q e)."""
        p, e = self.blocks[i]
        if p.coeff(0) == 0:
            raise DomainError("block with p(0) = 0 has no multiplicative order")
        return poly_order(p) * self.field.q ** _ceil_log(self.field.q, e)

    def generator_order(self) -> int:
        return math.lcm(*(self.block_order(i) for i in range(len(self.blocks))))


def build_generator(spec: ElementaryDivisorSpec, require_invertible: bool = True) -> Mat:
    """Block-diagonal matrix of companion blocks, one per (p, e) with poly p^e."""
    q = spec.field.q
    n = spec.n
    if require_invertible and any(p.coeff(0) == 0 for p, _ in spec.blocks):
        raise SingularMatrixError(
            "generator is singular: a block polynomial has p(0) = 0"
        )
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for p, e in spec.blocks:
        block = companion_matrix(poly_pow(p, e))
        m = block.nrows
        for i in range(m):
            for j in range(m):
                rows[offset + i][offset + j] = block.rows[i][j]
        offset += m
    return Mat.make(q, rows)


@dataclass(frozen=True)
class MatrixType:
    """Conjugacy invariant of a cyclic subgroup: one (partition, order) per
    distinct irreducible factor of the characteristic polynomial, sorted by
    (order, factor degree, partition) so equality is structural.

    The sort order is a convention of this implementation; normalize before
    comparing against types computed elsewhere.
    """

    partitions: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]


def char_poly(A: Mat) -> Poly:
    """det(xI - A) over F_q[x] by subset dynamic programming; monic."""
    n = A.nrows
    if n != A.ncols:
        raise DomainError("characteristic polynomial of a non-square matrix")
    field = PrimeField(A.q)
    x = Poly.make(field, [0, 1])
    entries = [
        [
            (x if i == j else Poly(field, ())) - Poly.make(field, [A.rows[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    zero = Poly(field, ())
    state: dict[int, Poly] = {0: Poly.make(field, [1])}
    for r in range(n):
        nxt: dict[int, Poly] = {}
        for mask, val in state.items():
            if val.is_zero:
                continue
            pos = 0
            for j in range(n):
                if mask & (1 << j):
                    continue
                e = entries[r][j]
                if not e.is_zero:
                    term = val * e
                    if pos & 1:
                        term = -term
                    key = mask | (1 << j)
                    nxt[key] = nxt.get(key, zero) + term
                pos += 1
        state = nxt
    return state.get((1 << n) - 1, zero)


def factor_poly(f: Poly) -> list[tuple[Poly, int]]:
    """Factor into monic irreducibles by trial division, ascending
    (degree, integer encoding) order. Deterministic."""
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    d = 1
    while f.degree >= 1:
        if d > f.degree // 2:
            # no factor of degree <= deg/2 remains, so f itself is irreducible
            if not is_irreducible(f):
                raise InternalInvariantError(f"residual {f} should be irreducible")
            out.append((f, 1))
            break
        for p in irreducible_polys(f.field, d):
            mult = 0
            while True:
                quot, rem = divmod(f, p)
                if not rem.is_zero:
                    break
                f = quot
                mult += 1
            if mult:
                out.append((p, mult))
            if f.degree < 1:
                break
        d += 1
    return out


def _evaluate_at_matrix(p: Poly, A: Mat) -> Mat:
    n = A.nrows
    out = Mat.make(A.q, [[0] * n for _ in range(n)])
    for c in reversed(p.coeffs):
        out = out * A
        if c:
            ident = Mat.identity(A.q, n)
            out = Mat(
                A.q,
                tuple(
                    tuple((a + c * b) % A.q for a, b in zip(row_o, row_i))
                    for row_o, row_i in zip(out.rows, ident.rows)
                ),
            )
    return out


def matrix_type(A: Mat, max_dim: int = MAX_CLASSIFY_DIM) -> MatrixType:
    """Recover (partitions, orders) from the kernel-dimension sequences
    dim ker p(A)^j of each irreducible factor p of the characteristic
    polynomial."""
    n = A.nrows
    if n != A.ncols:
        raise DomainError("matrix type of a non-square matrix")
    if n > max_dim:
        raise DomainError(f"classification limited to n <= {max_dim}")
    if A.rank() != n:
        raise SingularMatrixError("matrix type needs an invertible matrix")
    records = []
    for p, mult in factor_poly(char_poly(A)):
        deg = p.degree
        B = _evaluate_at_matrix(p, A)
        counts: list[int] = []
        Bj = B
        k_prev = 0
        while True:
            k_j = n - Bj.rank()
            step = k_j - k_prev
            if step % deg:
                raise InternalInvariantError("kernel growth not a multiple of deg p")
            c_j = step // deg
            if c_j == 0:
                break
            counts.append(c_j)
            if k_j >= deg * mult:
                break
            k_prev = k_j
            Bj = Bj * B
        parts: list[int] = []
        for j in range(len(counts)):
            exact = counts[j] - (counts[j + 1] if j + 1 < len(counts) else 0)
            parts.extend([j + 1] * exact)
        partition = tuple(sorted(parts, reverse=True))
        if sum(partition) != mult:
            raise InternalInvariantError("partition does not sum to the multiplicity")
        # order on the p-primary component: ord(p) lifted by the char power
        # needed to kill the largest nilpotent part
        order = poly_order(p) * A.q ** _ceil_log(A.q, partition[0])
        records.append((order, deg, partition))
    records.sort()
    return MatrixType(
        partitions=tuple(r[2] for r in records),
        orders=tuple(r[0] for r in records),
    )


def same_group_type(A: Mat, B: Mat) -> bool:
    """Decides conjugacy of the cyclic groups <A> and <B>."""
    if A.nrows != B.nrows or A.q != B.q:
        raise DomainError("matrices of different size or base field")
    return matrix_type(A) == matrix_type(B)
