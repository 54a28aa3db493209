"""Spread codes from cyclic orbits.

A k-spread partitions the nonzero vectors of F_q^n into subspaces of
dimension k (needs k | n). The primitive construction takes the orbit of
the subfield-like start span{phi_inv(alpha^(i*c))} under a primitive
companion matrix; the non-primitive construction uses a generator of
order exactly c = (q^n - 1)/(q^k - 1) together with a start whose nonzero
elements lie in pairwise distinct <x>-orbits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import ORBIT_CAP, CyclicOrbitCode, enumerate_orbit, make_code
from .canonical import ElementaryDivisorSpec
from .errors import DomainError
from .fields import (
    FieldCtx,
    Poly,
    PrimeField,
    field_context,
    find_irreducible_with_order,
    is_primitive,
    least_primitive,
)
from .linalg import Subspace


@dataclass(frozen=True)
class SpreadSpec:
    """Parameters of a primitive spread construction."""

    q: int
    k: int
    n: int
    p: Poly
    c: int

    @classmethod
    def make(cls, q: int, k: int, n: int, p: Poly | None = None) -> "SpreadSpec":
        if k < 1 or n < 1:
            raise DomainError("spread needs k >= 1 and n >= 1")
        if n % k != 0:
            raise DomainError(f"spread needs k | n, got k={k}, n={n}")
        field = PrimeField(q)
        if p is None:
            p = least_primitive(field, n)
        else:
            p = p.monic()
            if p.field != field:
                raise DomainError("spread polynomial over the wrong field")
            if p.degree != n:
                raise DomainError(f"spread polynomial must have degree {n}")
            if not is_primitive(p):
                raise DomainError(f"spread polynomial {p} is not primitive")
        c = (q**n - 1) // (q**k - 1)
        return cls(q, k, n, p, c)


def spread_start_rows(spec: SpreadSpec) -> list[tuple[int, ...]]:
    """Rows phi_inv(alpha^(i*c)), i = 0..k-1; they span a k-dim subspace."""
    ctx = field_context(spec.p)
    return [ctx.x_power(i * spec.c) for i in range(spec.k)]


def build_spread(spec: SpreadSpec) -> CyclicOrbitCode:
    """The primitive spread code; cardinality c, minimum distance 2k."""
    block = ElementaryDivisorSpec.make(spec.p.field, [(spec.p, 1)])
    return make_code(block, spread_start_rows(spec))


def verify_spread(code: CyclicOrbitCode, cap: int = ORBIT_CAP) -> bool:
    """True iff the orbit is a spread: right cardinality and the codewords
    cover every nonzero vector exactly once."""
    q, n, k = code.q, code.n, code.k
    if (q**n - 1) % (q**k - 1) != 0:
        return False
    expected = (q**n - 1) // (q**k - 1)
    orbit = enumerate_orbit(code, cap=cap)
    if len(orbit) != expected:
        return False
    seen: set[tuple[int, ...]] = set()
    for W in orbit:
        for v in W.nonzero_elements():
            if v in seen:
                return False
            seen.add(v)
    return len(seen) == q**n - 1


# -- non-primitive spreads --------------------------------------------------


def _decode_vector(q: int, n: int, code_int: int) -> tuple[int, ...]:
    coeffs = []
    for _ in range(n):
        coeffs.append(code_int % q)
        code_int //= q
    return tuple(coeffs)


def distinct_orbit_start(ctx: FieldCtx, k: int) -> Subspace | None:
    """Deterministic search for a k-dim subspace whose nonzero elements lie
    in pairwise distinct <x>-orbits.

    Candidate vectors are tried in ascending integer encoding with
    backtracking, so the result is unique and reproducible. Returns None
    when no such subspace exists.
    """
    if not ctx.is_irreducible:
        raise DomainError("distinct-orbit start search needs an irreducible modulus")
    q, n = ctx.q, ctx.n
    total = q**n

    def extend(rows: list, span: list, orbits: set, next_code: int):
        if len(rows) == k:
            return Subspace.from_rows(q, n, rows)
        for code_int in range(next_code, total):
            v = _decode_vector(q, n, code_int)
            if v in span_set:
                continue
            new_elems = []
            new_orbits = set()
            ok = True
            for c in range(1, q):
                cv = tuple((c * x) % q for x in v)
                for e in span:
                    w = tuple((a + b) % q for a, b in zip(e, cv))
                    oid, _ = ctx.element_orbit(w)
                    if oid in orbits or oid in new_orbits:
                        ok = False
                        break
                    new_orbits.add(oid)
                    new_elems.append(w)
                if not ok:
                    break
            if not ok:
                continue
            span_set.update(new_elems)
            found = extend(rows + [v], span + new_elems, orbits | new_orbits, code_int + 1)
            if found is not None:
                return found
            span_set.difference_update(new_elems)
        return None

    zero = (0,) * n
    span_set: set = {zero}
    return extend([], [zero], set(), 1)


def build_nonprimitive_spread(q: int, k: int, n: int) -> CyclicOrbitCode:
    """Spread from a non-primitive generator of order (q^n-1)/(q^k-1).

    The generator polynomial is the least irreducible of degree n with
    that order; the start comes from distinct_orbit_start. Raises when the
    polynomial or the start does not exist.
    """
    if k < 1 or n % k != 0:
        raise DomainError(f"spread needs k | n, got k={k}, n={n}")
    field = PrimeField(q)
    c = (q**n - 1) // (q**k - 1)
    p = find_irreducible_with_order(field, n, c)
    ctx = field_context(p)
    start = distinct_orbit_start(ctx, k)
    if start is None:
        raise DomainError(
            f"no distinct-orbit start of dimension {k} exists for order {c}"
        )
    block = ElementaryDivisorSpec.make(field, [(p, 1)])
    return make_code(block, start)
