"""Exact arithmetic over prime fields F_q and quotient rings F_q[x]/(f).

Elements of a quotient ring are fixed-length coefficient tuples (ascending
powers of x, length = deg f), which makes them directly interchangeable with
row vectors of F_q^n. All arithmetic is exact integer arithmetic mod q; no
floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import DomainError, NoSuchPolynomialError, NonUnitError

# Degree of the zero polynomial; compares below every integer.
NEG_INF = float("-inf")


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division. Fine for the sizes here (< 10^7)."""
    if m < 1:
        raise DomainError(f"cannot factorize {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors(m: int) -> list[int]:
    """All positive divisors of m, ascending."""
    divs = [1]
    for p, e in factorize(m).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/m)^*. Requires gcd(a, m) = 1."""
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        raise DomainError(f"{a} is not a unit mod {m}")
    t = a % m
    for e in range(1, m + 1):
        if t == 1:
            return e
        t = (t * a) % m
    raise DomainError(f"order of {a} mod {m} not found")  # unreachable


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_q. Elements are plain ints in range(q)."""

    q: int

    def __post_init__(self) -> None:
        if not _is_prime(self.q):
            raise DomainError(f"field size must be prime, got {self.q}")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise NonUnitError("division by zero in the base field")
        return pow(a, self.q - 2, self.q)

    def __repr__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over a prime field, coefficients ascending.

    The coefficient tuple is normalized: reduced mod q with no trailing
    zeros, so the zero polynomial is the empty tuple and equality is
    structural.
    """

    field: PrimeField
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, field: PrimeField, coeffs) -> "Poly":
        c = [int(x) % field.q for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(field, tuple(c))

    @classmethod
    def from_text(cls, field: PrimeField, text: str) -> "Poly":
        """Parse the space-separated ascending-coefficient form, e.g. "1 1 0 0 0 0 1"."""
        try:
            coeffs = [int(tok) for tok in text.split()]
        except ValueError as exc:
            raise DomainError(
                f"polynomial text must be space-separated integers: {text!r}"
            ) from exc
        if not coeffs:
            raise DomainError("empty polynomial text")
        return cls.make(field, coeffs)

    def to_text(self) -> str:
        coeffs = self.coeffs if self.coeffs else (0,)
        return " ".join(str(c) for c in coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return Poly.make(self.field, [c * inv for c in self.coeffs])

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def evaluate(self, a: int) -> int:
        q = self.field.q
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % q
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        m = max(len(self.coeffs), len(other.coeffs))
        return Poly.make(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(m)]
        )

    def __neg__(self) -> "Poly":
        return Poly.make(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(self.field, ())
        q = self.field.q
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % q
        return Poly.make(self.field, out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise NonUnitError("polynomial division by zero")
        q = self.field.q
        rem = list(self.coeffs)
        dq = [0] * max(len(rem) - len(other.coeffs) + 1, 1)
        lead_inv = self.field.inv(other.coeffs[-1])
        dother = len(other.coeffs) - 1
        while len(rem) >= len(other.coeffs) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(other.coeffs):
                break
            shift = len(rem) - 1 - dother
            factor = (rem[-1] * lead_inv) % q
            dq[shift] = factor
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = (rem[shift + i] - factor * b) % q
        return Poly.make(self.field, dq), Poly.make(self.field, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def encoding(self) -> int:
        """Integer encoding sum(c_i * q^i); the deterministic tie-break order."""
        q = self.field.q
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if c == 1 else f"{c}{xs}")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    field = a.field
    one = Poly.make(field, [1])
    zero = Poly(field, ())
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if r0.is_zero:
        return r0, s0, t0
    # normalize to monic gcd
    lead_inv = Poly.make(field, [field.inv(r0.coeffs[-1])])
    return r0.monic(), lead_inv * s0, lead_inv * t0


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    """base^e mod `mod` by square and multiply; e >= 0."""
    result = Poly.make(mod.field, [1])
    acc = base % mod
    while e:
        if e & 1:
            result = (result * acc) % mod
        acc = (acc * acc) % mod
        e >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over F_q via gcd with x^(q^d) - x for d up to deg/2."""
    if f.degree is NEG_INF or f.degree == 0:
        return False
    f = f.monic()
    if f.degree == 1:
        return True
    q = f.field.q
    x = Poly.make(f.field, [0, 1])
    for d in range(1, f.degree // 2 + 1):
        frob = pow_mod(x, q**d, f)
        if not poly_gcd(frob - x, f).degree == 0:
            return False
    return True


def poly_order(f: Poly) -> int:
    """Multiplicative order of x in F_q[x]/(f); requires f(0) != 0.

    Irreducible moduli use the divisor scan of q^n - 1; anything else falls
    back to bounded power iteration.
    """
    if f.degree is NEG_INF or f.degree < 1:
        raise DomainError("order needs a modulus of degree >= 1")
    if f.coeff(0) == 0:
        raise DomainError("x divides the modulus, so no power of x is 1")
    f = f.monic()
    q = f.field.q
    n = f.degree
    x = Poly.make(f.field, [0, 1])
    one = Poly.make(f.field, [1])
    if is_irreducible(f):
        for e in divisors(q**n - 1):
            if pow_mod(x, e, f) == one:
                return e
        raise DomainError("order scan failed")  # unreachable for irreducible f
    cap = q**n
    t = x % f
    for e in range(1, cap + 1):
        if t == one:
            return e
        t = (t * x) % f
    raise DomainError(f"x has no order below {cap} mod {f}")


def is_primitive(f: Poly) -> bool:
    """True when f is irreducible and x generates the full unit group."""
    if f.degree is NEG_INF or f.degree < 1 or f.coeff(0) == 0:
        return False
    if not is_irreducible(f):
        return False
    q = f.field.q
    return poly_order(f) == q**f.degree - 1


def monic_polys(field: PrimeField, degree: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree, ascending integer encoding."""
    if degree < 0:
        return
    q = field.q
    for m in range(q**degree):
        coeffs = []
        t = m
        for _ in range(degree):
            coeffs.append(t % q)
            t //= q
        coeffs.append(1)
        yield Poly(field, tuple(coeffs))


def irreducible_polys(field: PrimeField, degree: int) -> Iterator[Poly]:
    """Monic irreducibles of the given degree, ascending integer encoding."""
    for f in monic_polys(field, degree):
        if is_irreducible(f):
            yield f


def find_irreducible_with_order(field: PrimeField, degree: int, order: int) -> Poly:
    """Least monic irreducible of this degree whose root has the given order.

    "Least" is by ascending integer encoding sum(c_i * q^i). Existence needs
    the multiplicative order of q mod `order` to be exactly `degree`; when
    that fails no scan is attempted.
    """
    q = field.q
    if degree < 1:
        raise NoSuchPolynomialError("degree must be >= 1")
    if order < 1 or (q**degree - 1) % order != 0:
        raise NoSuchPolynomialError(
            f"no degree-{degree} irreducible over GF({q}) has order {order}: "
            f"order must divide {q**degree - 1}"
        )
    if order == 1:
        if degree != 1:
            raise NoSuchPolynomialError(
                f"order 1 forces degree 1, not degree {degree}"
            )
        return Poly.make(field, [-1, 1])  # x - 1
    if multiplicative_order(q, order) != degree:
        raise NoSuchPolynomialError(
            f"no degree-{degree} irreducible over GF({q}) has order {order}: "
            f"{q} has order {multiplicative_order(q, order)} mod {order}"
        )
    for f in irreducible_polys(field, degree):
        if f.coeff(0) != 0 and poly_order(f) == order:
            return f
    raise NoSuchPolynomialError(
        f"scan found no degree-{degree} irreducible of order {order} over GF({q})"
    )  # unreachable when the precheck passes


def least_primitive(field: PrimeField, degree: int) -> Poly:
    """Least monic primitive polynomial of the given degree."""
    return find_irreducible_with_order(field, degree, field.q**degree - 1)


class FieldCtx:
    """Arithmetic context for F_q[x]/(f) with f monic of degree n.

    Ring elements are coefficient tuples of length exactly n. The context
    precomputes the power/discrete-log table of x eagerly when f is
    primitive; for other moduli with f(0) != 0 the table of x-powers is
    built on first use (x is still a unit there). `dlog_table` is None
    unless f is primitive.
    """

    def __init__(self, modulus: Poly):
        if modulus.degree is NEG_INF or modulus.degree < 1:
            raise DomainError("modulus must have degree >= 1")
        modulus = modulus.monic()
        self.modulus = modulus
        self.field = modulus.field
        self.q = modulus.field.q
        self.n = modulus.degree
        self.is_irreducible = is_irreducible(modulus)
        self.is_primitive = (
            self.is_irreducible
            and modulus.coeff(0) != 0
            and poly_order(modulus) == self.q**self.n - 1
        )
        # x^n mod f, the single reduction row needed for multiply-by-x
        self._xn_row = tuple((-modulus.coeff(i)) % self.q for i in range(self.n))
        self.zero = (0,) * self.n
        self.one = tuple(1 if i == 0 else 0 for i in range(self.n))
        self.x = tuple(1 if i == 1 else 0 for i in range(self.n)) if self.n > 1 else self._xn_row
        self._x_powers: list[tuple[int, ...]] | None = None
        self._x_log: dict[tuple[int, ...], int] | None = None
        self._orbit_of: dict[tuple[int, ...], tuple[int, int]] | None = None
        self._orbit_reps: list[tuple[int, ...]] | None = None
        if self.is_primitive:
            self._build_x_table()

    # -- representation plumbing ------------------------------------------

    def elem(self, seq) -> tuple[int, ...]:
        v = tuple(int(c) % self.q for c in seq)
        if len(v) != self.n:
            raise DomainError(f"element needs {self.n} coefficients, got {len(v)}")
        return v

    def to_poly(self, v: tuple[int, ...]) -> Poly:
        return Poly.make(self.field, v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.q == other.q
            and self.modulus.coeffs == other.modulus.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.q, self.modulus.coeffs))

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.q})[x]/({self.modulus}))"

    # -- ring arithmetic ---------------------------------------------------

    def add(self, a, b) -> tuple[int, ...]:
        q = self.q
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a, b) -> tuple[int, ...]:
        q = self.q
        return tuple((x - y) % q for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        q = self.q
        return tuple((-x) % q for x in a)

    def smul(self, c: int, a) -> tuple[int, ...]:
        q = self.q
        c %= q
        return tuple((c * x) % q for x in a)

    def mul_by_x(self, a) -> tuple[int, ...]:
        q = self.q
        carry = a[-1]
        shifted = (0,) + a[:-1]
        if carry == 0:
            return shifted
        return tuple((s + carry * r) % q for s, r in zip(shifted, self._xn_row))

    def mul(self, a, b) -> tuple[int, ...]:
        # schoolbook product then reduction; n <= 12 keeps this cheap
        prod = (self.to_poly(a) * self.to_poly(b)) % self.modulus
        return self._pad(prod)

    def _pad(self, p: Poly) -> tuple[int, ...]:
        c = p.coeffs
        return c + (0,) * (self.n - len(c))

    def is_unit(self, a) -> bool:
        if all(c == 0 for c in a):
            return False
        if self.is_irreducible:
            return True
        return poly_gcd(self.to_poly(a), self.modulus).degree == 0

    def inv(self, a) -> tuple[int, ...]:
        g, s, _ = poly_ext_gcd(self.to_poly(a), self.modulus)
        if g.degree != 0:
            raise NonUnitError(
                f"{self.to_poly(a)} is not a unit mod {self.modulus}"
            )
        return self._pad(s % self.modulus)

    def div(self, a, b) -> tuple[int, ...]:
        return self.mul(a, self.inv(b))

    def pow_elem(self, a, e: int) -> tuple[int, ...]:
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        acc = a
        while e:
            if e & 1:
                result = self.mul(result, acc)
            acc = self.mul(acc, acc)
            e >>= 1
        return result

    # -- powers of x and discrete logs ------------------------------------

    def _build_x_table(self) -> None:
        if self.modulus.coeff(0) == 0:
            raise DomainError("x is not a unit mod this modulus")
        powers = [self.one]
        log = {self.one: 0}
        v = self.x
        e = 1
        while v != self.one:
            powers.append(v)
            log[v] = e
            v = self.mul_by_x(v)
            e += 1
            if e > self.q**self.n:
                raise DomainError("x-power table failed to close")
        self._x_powers = powers
        self._x_log = log

    @property
    def x_order(self) -> int:
        if self._x_powers is None:
            self._build_x_table()
        return len(self._x_powers)

    def x_power(self, e: int) -> tuple[int, ...]:
        """x^e as a ring element (e taken mod the order of x)."""
        if self._x_powers is None:
            self._build_x_table()
        return self._x_powers[e % len(self._x_powers)]

    def x_log(self, v) -> int | None:
        """Exponent e with x^e = v, or None when v is outside <x>."""
        if self._x_log is None:
            self._build_x_table()
        return self._x_log.get(tuple(v))

    @property
    def dlog_table(self) -> dict[tuple[int, ...], int] | None:
        """Full discrete-log table; present exactly when the modulus is primitive."""
        if not self.is_primitive:
            return None
        if self._x_log is None:
            self._build_x_table()
        return self._x_log

    # -- <x>-orbit decomposition of the nonzero elements -------------------

    def _build_orbit_index(self) -> None:
        if not self.is_irreducible:
            raise DomainError("orbit index needs an irreducible modulus")
        orbit_of: dict[tuple[int, ...], tuple[int, int]] = {}
        reps: list[tuple[int, ...]] = []
        q, n = self.q, self.n
        for code in range(1, q**n):
            coeffs = []
            t = code
            for _ in range(n):
                coeffs.append(t % q)
                t //= q
            v = tuple(coeffs)
            if v in orbit_of:
                continue
            oid = len(reps)
            reps.append(v)
            e = 0
            w = v
            while True:
                orbit_of[w] = (oid, e)
                w = self.mul_by_x(w)
                e += 1
                if w == v:
                    break
        self._orbit_of = orbit_of
        self._orbit_reps = reps

    def element_orbit(self, v) -> tuple[int, int]:
        """(orbit id, exponent) of v under multiplication by x.

        Orbit ids are assigned by discovering representatives in ascending
        integer encoding, so orbit 0 is always the orbit of 1.
        """
        if self._orbit_of is None:
            self._build_orbit_index()
        return self._orbit_of[tuple(v)]

    @property
    def orbit_count(self) -> int:
        if self._orbit_of is None:
            self._build_orbit_index()
        return len(self._orbit_reps)


@lru_cache(maxsize=None)
def _cached_ctx(q: int, coeffs: tuple[int, ...]) -> FieldCtx:
    return FieldCtx(Poly(PrimeField(q), coeffs))


def field_context(modulus: Poly) -> FieldCtx:
    """Shared, cached context for a modulus; contexts are immutable."""
    return _cached_ctx(modulus.field.q, modulus.monic().coeffs)


@dataclass(frozen=True)
class RingElem:
    """An element of a FieldCtx with operator sugar.

    Supports +, -, *, / (division raises NonUnitError on a non-unit
    divisor), unary -, and integer powers.
    """

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", self.ctx.elem(self.coeffs))

    def _wrap(self, v) -> "RingElem":
        return RingElem(self.ctx, v)

    def _check(self, other: "RingElem") -> None:
        if self.ctx != other.ctx:
            raise DomainError("ring elements from different contexts")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return self._wrap(self.ctx.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return self._wrap(self.ctx.sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "RingElem":
        return self._wrap(self.ctx.neg(self.coeffs))

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return self._wrap(self.ctx.mul(self.coeffs, other.coeffs))

    def __truediv__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return self._wrap(self.ctx.div(self.coeffs, other.coeffs))

    def inverse(self) -> "RingElem":
        return self._wrap(self.ctx.inv(self.coeffs))

    def __pow__(self, e: int) -> "RingElem":
        return self._wrap(self.ctx.pow_elem(self.coeffs, e))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_unit(self) -> bool:
        return self.ctx.is_unit(self.coeffs)

    def __str__(self) -> str:
        return str(self.ctx.to_poly(self.coeffs))


def phi(v, ctx: FieldCtx) -> RingElem:
    """Identify a row vector of F_q^n with an element of F_q[x]/(f)."""
    return RingElem(ctx, tuple(v))


def phi_inv(u: RingElem) -> tuple[int, ...]:
    """Back from the ring to the row vector; inverse of phi."""
    return u.coeffs


def dlog(u: RingElem) -> int:
    """Discrete log base x. Requires a primitive modulus and u != 0."""
    if not u.ctx.is_primitive:
        raise DomainError("dlog needs a primitive modulus")
    if u.is_zero:
        raise DomainError("dlog of zero is undefined")
    return u.ctx.x_log(u.coeffs)
