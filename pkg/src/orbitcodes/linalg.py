"""Linear algebra over F_q: matrices, canonical subspaces, the subspace
metric, duality, companion matrices, and the algebra isomorphism psi.

Subspaces are always stored as the unique RREF of their row space, so
structural equality is subspace equality and Subspace objects can be dict
keys. Row vectors act on matrices from the left throughout (v M, U A).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, SingularMatrixError
from .fields import FieldCtx, Poly, RingElem, divisors, phi

Row = tuple[int, ...]


def _rref_rows(rows: list[list[int]], q: int) -> tuple[list[Row], tuple[int, ...]]:
    """In-place Gauss-Jordan; returns the nonzero RREF rows and pivot columns."""
    if not rows:
        return [], ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], q - 2, q)
        if inv != 1:
            rows[r] = [(x * inv) % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], tuple(pivots)


@dataclass(frozen=True)
class Mat:
    """Dense matrix over F_q, entries reduced mod q, row-major tuples."""

    q: int
    rows: tuple[Row, ...]

    @classmethod
    def make(cls, q: int, rows) -> "Mat":
        out = tuple(tuple(int(x) % q for x in row) for row in rows)
        if out and any(len(r) != len(out[0]) for r in out):
            raise DomainError("ragged matrix rows")
        return cls(q, out)

    @classmethod
    def identity(cls, q: int, n: int) -> "Mat":
        return cls(q, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_text(cls, q: int, text: str) -> "Mat":
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise DomainError(f"matrix row must be space-separated integers: {line!r}") from exc
        if not rows:
            raise DomainError("empty matrix text")
        return cls.make(q, rows)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __mul__(self, other: "Mat") -> "Mat":
        if self.q != other.q or self.ncols != other.nrows:
            raise DomainError("matrix product shape/field mismatch")
        q = self.q
        cols = list(zip(*other.rows))
        return Mat(
            q,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % q for col in cols)
                for row in self.rows
            ),
        )

    def __pow__(self, e: int) -> "Mat":
        if self.nrows != self.ncols:
            raise DomainError("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Mat.identity(self.q, self.nrows)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> "Mat":
        return Mat(self.q, tuple(zip(*self.rows)))

    def rank(self) -> int:
        _, pivots = _rref_rows([list(r) for r in self.rows], self.q)
        return len(pivots)

    def inverse(self) -> "Mat":
        n = self.nrows
        if n != self.ncols:
            raise SingularMatrixError("inverse of a non-square matrix")
        q = self.q
        aug = [list(self.rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        reduced, pivots = _rref_rows(aug, q)
        if len(pivots) != n or pivots != tuple(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Mat(q, tuple(row[n:] for row in reduced))


def row_times_mat(v: Row, M: Mat) -> Row:
    q = M.q
    return tuple(
        sum(v[i] * M.rows[i][j] for i in range(len(v))) % q for j in range(M.ncols)
    )


def rref(M: Mat) -> tuple[Mat, int]:
    """Reduced row echelon form (same shape, zero rows at the bottom) and rank."""
    reduced, pivots = _rref_rows([list(r) for r in M.rows], M.q)
    rank = len(pivots)
    pad = tuple((0,) * M.ncols for _ in range(M.nrows - rank))
    return Mat(M.q, tuple(reduced) + pad), rank


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n in canonical form.

    `rows` is the unique RREF basis (no zero rows), so equal subspaces are
    equal objects. Construct through from_rows/from_matrix; the raw
    constructor trusts its input.
    """

    q: int
    n: int
    rows: tuple[Row, ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, q: int, n: int, rows) -> "Subspace":
        mat = [list(int(x) % q for x in row) for row in rows]
        if any(len(r) != n for r in mat):
            raise DomainError(f"rows must have length {n}")
        reduced, pivots = _rref_rows(mat, q)
        return cls(q, n, tuple(reduced), pivots)

    @classmethod
    def from_matrix(cls, M: Mat) -> "Subspace":
        return cls.from_rows(M.q, M.ncols, M.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def matrix(self) -> Mat:
        return Mat(self.q, self.rows)

    def contains(self, v) -> bool:
        q = self.q
        w = [int(x) % q for x in v]
        if len(w) != self.n:
            raise DomainError("vector/ambient dimension mismatch")
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                w = [(a - c * b) % q for a, b in zip(w, row)]
        return not any(w)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def elements(self):
        """Every vector of the subspace (q^dim of them), zero included."""
        q = self.q
        for coeffs in itertools.product(range(q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.rows):
                if c:
                    for j, x in enumerate(row):
                        v[j] = (v[j] + c * x) % q
            yield tuple(v)

    def nonzero_elements(self):
        for v in self.elements():
            if any(v):
                yield v

    def transform(self, M: Mat) -> "Subspace":
        """The image subspace { uM : u in U }, canonicalized."""
        if M.nrows != self.n:
            raise DomainError("transform shape mismatch")
        return Subspace.from_rows(
            self.q, M.ncols, [row_times_mat(r, M) for r in self.rows]
        )

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, n={self.n}, dim={self.dim})"


def stacked_rank(U: Subspace, V: Subspace) -> int:
    rows = [list(r) for r in U.rows] + [list(r) for r in V.rows]
    _, pivots = _rref_rows(rows, U.q)
    return len(pivots)


def intersection_dim(U: Subspace, V: Subspace) -> int:
    """dim(U meet V) via dim U + dim V - dim(U + V)."""
    if U.n != V.n or U.q != V.q:
        raise DomainError("subspaces live in different ambient spaces")
    return U.dim + V.dim - stacked_rank(U, V)


def subspace_distance(U: Subspace, V: Subspace) -> int:
    """The subspace metric dim U + dim V - 2 dim(U meet V)."""
    if U.n != V.n or U.q != V.q:
        raise DomainError("subspaces live in different ambient spaces")
    return U.dim + V.dim - 2 * intersection_dim(U, V)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    if U.n != V.n or U.q != V.q:
        raise DomainError("subspaces live in different ambient spaces")
    return Subspace.from_rows(U.q, U.n, U.rows + V.rows)


def dual(U: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    q, n, k = U.q, U.n, U.dim
    free = [c for c in range(n) if c not in U.pivots]
    basis = []
    for c in free:
        # one kernel vector per free column of the RREF basis
        v = [0] * n
        v[c] = 1
        for row, p in zip(U.rows, U.pivots):
            v[p] = (-row[c]) % q
        basis.append(v)
    assert len(basis) == n - k
    return Subspace.from_rows(q, n, basis)


def companion_matrix(f: Poly) -> Mat:
    """Companion matrix: superdiagonal ones, last row -f_0 ... -f_{n-1}.

    With row vectors acting from the left, v -> vM is multiplication by x
    mod f on coefficient vectors.
    """
    if not f.is_monic:
        raise DomainError("companion matrix needs a monic polynomial")
    n = f.degree
    if n < 1:
        raise DomainError("companion matrix needs degree >= 1")
    q = f.field.q
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    for j in range(n):
        rows[n - 1][j] = (-f.coeff(j)) % q
    return Mat.make(q, rows)


def matrix_order(M: Mat, order_multiple: int | None = None, cap: int | None = None) -> int:
    """Least t >= 1 with M^t = I.

    With a known multiple of the order, scans its divisors with fast
    powering; otherwise iterates products up to `cap` (default q^n, which
    bounds every element order in GL_n(F_q)).
    """
    n = M.nrows
    if n != M.ncols:
        raise SingularMatrixError("order of a non-square matrix")
    ident = Mat.identity(M.q, n)
    if order_multiple is not None:
        for d in divisors(order_multiple):
            if M**d == ident:
                return d
        raise DomainError(f"order does not divide {order_multiple}")
    if cap is None:
        cap = M.q**n
    acc = M
    for t in range(1, cap + 1):
        if acc == ident:
            return t
        acc = acc * M
    raise SingularMatrixError(
        f"no power up to {cap} equals the identity; matrix is singular or cap too small"
    )


def psi(A: Mat, ctx: FieldCtx) -> RingElem:
    """Algebra isomorphism F_q[P] -> F_q[x]/(f), sum(c_i P^i) -> sum(c_i x^i).

    P is the companion matrix of the ctx modulus. The coefficient vector is
    the first row of A; membership in F_q[P] is verified by rebuilding the
    matrix, so inputs outside span{I, P, ..., P^(n-1)} are rejected.
    """
    if A.nrows != ctx.n or A.ncols != ctx.n or A.q != ctx.q:
        raise DomainError("matrix shape does not match the context")
    u = phi(A.rows[0], ctx)
    if psi_inv(u) != A:
        raise DomainError("matrix is not a polynomial in the companion matrix")
    return u


def psi_inv(u: RingElem) -> Mat:
    """Inverse of psi: row j of the result is x^j * u mod f."""
    ctx = u.ctx
    rows = []
    ej = ctx.one
    for _ in range(ctx.n):
        rows.append(ctx.mul(ej, u.coeffs))
        ej = ctx.mul_by_x(ej)
    return Mat(ctx.q, tuple(rows))


@lru_cache(maxsize=None)
def _cached_companion(q: int, coeffs: tuple[int, ...]) -> Mat:
    from .fields import PrimeField

    return companion_matrix(Poly(PrimeField(q), coeffs))


def cached_companion(f: Poly) -> Mat:
    return _cached_companion(f.field.q, f.monic().coeffs)
