"""Cyclic orbit codes and their analysis.

A cyclic orbit code is the orbit of a k-dim subspace of F_q^n under the
cyclic group generated by an invertible matrix. The naive analyzer
enumerates the orbit; the fast analyzers exploit the generator's structure
(primitive companion, irreducible companion, two primitive diagonal
blocks, or the companion of p^2) through difference multisets of
discrete-log exponents. The underlying identity in every regime is

    multiplicity(key of h) + 1 = q^dim(U cap U P^h)

over ordered pairs of nonzero start elements, so the fast results are
exact, not bounds. Tests enforce equality against the naive oracle.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass

from .canonical import ElementaryDivisorSpec, poly_pow
from .errors import (
    DomainError,
    InternalInvariantError,
    OrbitCapError,
    ShapeMismatchError,
)
from .fields import FieldCtx, Poly, PrimeField, field_context
from .linalg import Mat, Subspace, matrix_order, row_times_mat, subspace_distance

logger = logging.getLogger(__name__)

ORBIT_CAP = 2**20

REGIMES = ("primitive", "irreducible", "completely_reducible", "non_semisimple", "general")


@dataclass(frozen=True)
class CodeParams:
    """Cardinality, minimum distance, and (optionally) the full distance
    distribution (D_0, D_2, ..., D_2k). min_distance is None for a
    cardinality-1 code, where no second codeword exists."""

    cardinality: int
    min_distance: int | None
    distribution: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CyclicOrbitCode:
    """An orbit code U<M>. Build through make_code/general_code.

    block_structure describes M as diagonal companion blocks when known;
    the fast analyzers and O(n)-per-row orbit stepping need it. A code
    built from a bare matrix has block_structure None and regime
    "general".
    """

    generator: Mat
    start: Subspace
    block_structure: ElementaryDivisorSpec | None
    regime: str

    @property
    def q(self) -> int:
        return self.start.q

    @property
    def n(self) -> int:
        return self.start.n

    @property
    def k(self) -> int:
        return self.start.dim

    def generator_order(self) -> int:
        if self.block_structure is not None:
            return self.block_structure.generator_order()
        return matrix_order(self.generator)


def _regime(spec: ElementaryDivisorSpec) -> str:
    blocks = spec.blocks
    if len(blocks) == 1:
        p, e = blocks[0]
        if e == 1:
            return "primitive" if field_context(p).is_primitive else "irreducible"
        if e == 2:
            return "non_semisimple"
        return "general"
    if all(e == 1 for _, e in blocks):
        return "completely_reducible"
    return "general"


def make_code(spec: ElementaryDivisorSpec, start_rows) -> CyclicOrbitCode:
    """Orbit code from elementary-divisor data and start subspace rows."""
    from .canonical import build_generator

    gen = build_generator(spec, require_invertible=True)
    if isinstance(start_rows, Subspace):
        start = start_rows
        if start.n != spec.n or start.q != spec.field.q:
            raise DomainError("start subspace does not match the generator")
    else:
        rows = [tuple(r) for r in start_rows]
        start = Subspace.from_rows(spec.field.q, spec.n, rows)
        if start.dim != len(rows):
            raise DomainError("start rows must be linearly independent")
    if start.dim < 1:
        raise DomainError("start subspace must have dimension >= 1")
    return CyclicOrbitCode(gen, start, spec, _regime(spec))


def general_code(generator: Mat, start: Subspace) -> CyclicOrbitCode:
    """Orbit code under an arbitrary invertible generator."""
    if generator.nrows != generator.ncols:
        raise DomainError("generator must be square")
    if generator.nrows != start.n or generator.q != start.q:
        raise DomainError("start subspace does not match the generator")
    if start.dim < 1:
        raise DomainError("start subspace must have dimension >= 1")
    if generator.rank() != generator.nrows:
        raise DomainError("generator must be invertible")
    return CyclicOrbitCode(generator, start, None, "general")


# -- orbit stepping ---------------------------------------------------------


def _block_contexts(spec: ElementaryDivisorSpec) -> list[tuple[int, int, FieldCtx]]:
    """(offset, width, context of F_q[x]/(p^e)) per block."""
    out = []
    offset = 0
    for p, e in spec.blocks:
        g = poly_pow(p, e)
        ctx = field_context(g)
        out.append((offset, g.degree, ctx))
        offset += g.degree
    return out


def _make_stepper(code: CyclicOrbitCode):
    """Returns rows -> rows after one application of the generator."""
    if code.block_structure is None:
        gen = code.generator

        def step(rows):
            return [row_times_mat(r, gen) for r in rows]

        return step

    blocks = _block_contexts(code.block_structure)

    def step(rows):
        out = []
        for r in rows:
            parts = []
            for off, width, ctx in blocks:
                parts.extend(ctx.mul_by_x(r[off : off + width]))
            out.append(tuple(parts))
        return out

    return step


def codeword(code: CyclicOrbitCode, exponent: int) -> Subspace:
    """The orbit element U M^exponent, canonicalized."""
    if code.block_structure is None:
        return code.start.transform(code.generator**exponent)
    blocks = [
        (off, width, ctx, ctx.x_power(exponent))
        for off, width, ctx in _block_contexts(code.block_structure)
    ]
    rows = []
    for r in code.start.rows:
        parts = []
        for off, width, ctx, xe in blocks:
            parts.extend(ctx.mul(r[off : off + width], xe))
        rows.append(parts)
    return Subspace.from_rows(code.q, code.n, rows)


def enumerate_orbit(code: CyclicOrbitCode, cap: int = ORBIT_CAP) -> list[Subspace]:
    """[U, UM, UM^2, ...] up to the first repeat of U; all canonical."""
    step = _make_stepper(code)
    start = code.start
    out = [start]
    rows = list(start.rows)
    while True:
        rows = step(rows)
        sub = Subspace.from_rows(code.q, code.n, rows)
        if sub == start:
            return out
        out.append(sub)
        if len(out) > cap:
            raise OrbitCapError(f"orbit exceeds the cap of {cap} subspaces")
        rows = list(sub.rows)


def analyze_naive(code: CyclicOrbitCode, cap: int = ORBIT_CAP) -> CodeParams:
    """Exhaustive orbit enumeration. Distances are measured from the start
    subspace only; the transversal argument makes that the full picture."""
    orbit = enumerate_orbit(code, cap=cap)
    k = code.k
    dist = [0] * (k + 1)
    dist[0] = 1
    best = None
    for W in orbit[1:]:
        d = subspace_distance(code.start, W)
        dist[d // 2] += 1
        if best is None or d < best:
            best = d
    return CodeParams(len(orbit), best, tuple(dist))


# -- difference-multiset machinery -----------------------------------------


class DifferenceMultiset:
    """Multiset of exponent differences b_m - b_l over ordered pairs l != m.

    Keys are residues mod the relevant orbit length (ints here; the
    two-block analyzer uses its own pair-keyed variant). multiplicity(h)+1
    is exactly q^dim(U cap UP^h).
    """

    def __init__(self):
        self.entries: Counter = Counter()

    def add(self, key, count: int = 1) -> None:
        self.entries[key] += count

    def get(self, key) -> int:
        return self.entries.get(key, 0)

    def max_multiplicity(self) -> int:
        return max(self.entries.values(), default=0)

    def keys_with(self, mult: int) -> list:
        return sorted(k for k, v in self.entries.items() if v == mult)


def _ilog(q: int, m: int) -> int:
    """Exact integer log: the d with q^d = m, else an internal error."""
    d = 0
    while q**d < m:
        d += 1
    if q**d != m:
        raise InternalInvariantError(
            f"multiplicity+1 = {m} is not a power of {q}; contradicts subspace structure"
        )
    return d


def _params_from_multiset(
    D: DifferenceMultiset,
    r: int,
    k: int,
    q: int,
    with_distribution: bool,
) -> CodeParams:
    """Shared d<k / d=k endgame for single-exponent difference multisets.

    r is the exponent modulus (the generator's order). Cardinality is the
    least key with full multiplicity q^k - 1, else r.
    """
    full = q**k - 1
    c = D.max_multiplicity()
    d = _ilog(q, c + 1)
    if d < k:
        cardinality = r
        min_distance = 2 * (k - d)
    else:
        cardinality = min(D.keys_with(full))
        if cardinality == 1:
            min_distance = None
        else:
            below = max((v for v in D.entries.values() if v < full), default=0)
            min_distance = 2 * (k - _ilog(q, below + 1))
    distribution = None
    if with_distribution:
        dist = [0] * (k + 1)
        dist[0] = 1
        for h in range(1, cardinality):
            dim = _ilog(q, D.get(h % r) + 1)
            dist[k - dim] += 1
        distribution = tuple(dist)
    return CodeParams(cardinality, min_distance, distribution)


def _single_block_ctx(code: CyclicOrbitCode, op: str) -> FieldCtx:
    spec = code.block_structure
    if spec is None or len(spec.blocks) != 1 or spec.blocks[0][1] != 1:
        raise DomainError(f"{op} needs a single companion-block generator")
    return field_context(spec.blocks[0][0])


def analyze_primitive(code: CyclicOrbitCode, with_distribution: bool = False) -> CodeParams:
    """Fast analysis for a primitive companion generator.

    Builds the difference multiset of dlogs of all nonzero start elements
    mod q^n - 1, then reads cardinality and minimum distance off the
    maximal multiplicities.
    """
    ctx = _single_block_ctx(code, "analyze_primitive")
    if not ctx.is_primitive:
        raise DomainError("analyze_primitive needs a primitive generator polynomial")
    q, k = code.q, code.k
    N = q**ctx.n - 1
    table = ctx.dlog_table
    logs = [table[v] for v in code.start.nonzero_elements()]
    D = DifferenceMultiset()
    for bl in logs:
        for bm in logs:
            if bl != bm:
                D.add((bm - bl) % N)
    return _params_from_multiset(D, N, k, q, with_distribution)


def analyze_irreducible(code: CyclicOrbitCode, with_distribution: bool = False) -> CodeParams:
    """Fast analysis for an irreducible (possibly non-primitive) companion
    generator: per-<x>-orbit difference multisets over Z_ord(P), summed.

    When every nonzero start element sits in a distinct orbit the multiset
    is empty and the result is the fast path (ord(P), 2k)."""
    ctx = _single_block_ctx(code, "analyze_irreducible")
    if not ctx.is_irreducible:
        raise DomainError("analyze_irreducible needs an irreducible generator polynomial")
    q, k = code.q, code.k
    r = ctx.x_order
    groups: dict[int, list[int]] = {}
    if ctx.is_primitive:
        table = ctx.dlog_table
        groups[0] = [table[v] for v in code.start.nonzero_elements()]
    else:
        for v in code.start.nonzero_elements():
            oid, e = ctx.element_orbit(v)
            groups.setdefault(oid, []).append(e)
    D = DifferenceMultiset()
    for exps in groups.values():
        for bl in exps:
            for bm in exps:
                if bl != bm:
                    D.add((bm - bl) % r)
    return _params_from_multiset(D, r, k, q, with_distribution)


def analyze_reducible_blocks(
    code: CyclicOrbitCode, with_distribution: bool = False
) -> CodeParams:
    """Fast analysis for diag(P_1, P_2) with both blocks primitive.

    Nonzero start elements split into S_1 (both block projections
    nonzero), S_2 (second zero), S_3 (first zero). Ordered S_1 pairs give
    exponent-pair keys; S_2/S_3 pairs constrain one coordinate and leave
    the other free; S_2/S_3 elements are additionally fixed by every h
    killing their live block, which is the diagonal contribution. The
    multiplicity of the key of h is then evaluated directly per exponent
    h, which also enforces that only CRT-realizable keys count.
    """
    spec = code.block_structure
    if (
        spec is None
        or len(spec.blocks) != 2
        or any(e != 1 for _, e in spec.blocks)
    ):
        raise DomainError("analyze_reducible_blocks needs exactly two companion blocks")
    ctx1 = field_context(spec.blocks[0][0])
    ctx2 = field_context(spec.blocks[1][0])
    if not (ctx1.is_primitive and ctx2.is_primitive):
        raise DomainError("analyze_reducible_blocks needs both blocks primitive")
    q, k = code.q, code.k
    n1 = ctx1.n
    r1, r2 = q**ctx1.n - 1, q**ctx2.n - 1
    L = math.lcm(r1, r2)
    t1, t2 = ctx1.dlog_table, ctx2.dlog_table

    s1_pairs = DifferenceMultiset()  # keys (a1, a2)
    s2_pairs = DifferenceMultiset()  # keys a1
    s3_pairs = DifferenceMultiset()  # keys a2
    s1: list[tuple[int, int]] = []
    s2: list[int] = []
    s3: list[int] = []
    for v in code.start.nonzero_elements():
        v1, v2 = v[:n1], v[n1:]
        if any(v1) and any(v2):
            s1.append((t1[v1], t2[v2]))
        elif any(v1):
            s2.append(t1[v1])
        else:
            s3.append(t2[v2])
    for bl1, bl2 in s1:
        for bm1, bm2 in s1:
            if (bl1, bl2) != (bm1, bm2):
                s1_pairs.add(((bm1 - bl1) % r1, (bm2 - bl2) % r2))
    for bl in s2:
        for bm in s2:
            if bl != bm:
                s2_pairs.add((bm - bl) % r1)
    for bl in s3:
        for bm in s3:
            if bl != bm:
                s3_pairs.add((bm - bl) % r2)
    n_s2, n_s3 = len(s2), len(s3)

    def mult(h: int) -> int:
        a1, a2 = h % r1, h % r2
        m = s1_pairs.get((a1, a2)) + s2_pairs.get(a1) + s3_pairs.get(a2)
        if a1 == 0:
            m += n_s2
        if a2 == 0:
            m += n_s3
        return m

    full = q**k - 1
    cardinality = L
    for h in range(1, L):
        if mult(h) == full:
            cardinality = h
            break
    if cardinality == 1:
        min_distance = None
    else:
        below = max(mult(h) for h in range(1, cardinality))
        min_distance = 2 * (k - _ilog(q, below + 1))
    distribution = None
    if with_distribution:
        dist = [0] * (k + 1)
        dist[0] = 1
        for h in range(1, cardinality):
            dist[k - _ilog(q, mult(h) + 1)] += 1
        distribution = tuple(dist)
    return CodeParams(cardinality, min_distance, distribution)


def analyze_nonsemisimple(
    code: CyclicOrbitCode, with_distribution: bool = False
) -> CodeParams:
    """Fast analysis for the companion of f = p^2, p irreducible, p(0) != 0.

    F_q[x]/(f) is a ring, not a field; x is still a unit, so exponents live
    mod ord(x) = matrix_order(P_f). For a unit element the matching
    exponents come from division plus a power-of-x lookup; non-units fall
    back to scanning u x^b. The theorem's stated cardinality q^(n/2) - 1
    does not hold in general; the value here comes from actual orbit
    closure, with a log line when the two disagree.
    """
    spec = code.block_structure
    if spec is None or len(spec.blocks) != 1 or spec.blocks[0][1] != 2:
        raise DomainError("analyze_nonsemisimple needs a single p^2 companion block")
    p = spec.blocks[0][0]
    if p.coeff(0) == 0:
        raise DomainError("generator is singular: p(0) = 0")
    f = poly_pow(p, 2)
    ctx = field_context(f)
    q, k = code.q, code.k
    r = ctx.x_order
    elems = list(code.start.nonzero_elements())
    elem_set = set(elems)
    D = DifferenceMultiset()
    for u in elems:
        if ctx.is_unit(u):
            inv_u = ctx.inv(u)
            for w in elems:
                b = ctx.x_log(ctx.mul(w, inv_u))
                if b is not None and b != 0:
                    D.add(b)
        else:
            v = u
            for b in range(1, r):
                v = ctx.mul_by_x(v)
                if v in elem_set:
                    D.add(b)
    params = _params_from_multiset(D, r, k, q, with_distribution)
    stated = q ** (ctx.n // 2) - 1
    if params.cardinality != stated:
        logger.debug(
            "p^2 orbit closure gives cardinality %d (stated q^(n/2)-1 = %d)",
            params.cardinality,
            stated,
        )
    return params


# -- dispatcher -------------------------------------------------------------


def fast_analyzer(code: CyclicOrbitCode):
    """The applicable fast analyzer for this code's regime, or None."""
    if code.regime == "primitive":
        return analyze_primitive
    if code.regime == "irreducible":
        return analyze_irreducible
    if code.regime == "non_semisimple":
        return analyze_nonsemisimple
    if code.regime == "completely_reducible":
        spec = code.block_structure
        if len(spec.blocks) == 2 and all(
            field_context(p).is_primitive for p, _ in spec.blocks
        ):
            return analyze_reducible_blocks
    return None


def analyze(
    code: CyclicOrbitCode,
    method: str = "auto",
    with_distribution: bool = False,
    cap: int = ORBIT_CAP,
) -> CodeParams:
    """Analyze by the requested method.

    "fast" demands a structural analyzer and fails when none applies;
    "auto" falls back to the naive oracle; "naive" always enumerates.
    """
    if method not in ("auto", "fast", "naive"):
        raise DomainError(f"unknown analysis method {method!r}")
    if code.k == code.n:
        # the start is the whole space, fixed by every generator
        dist = (1,) + (0,) * code.k if with_distribution else None
        return CodeParams(1, None, dist)

    def settle(params: CodeParams) -> CodeParams:
        # the oracle computes the distribution anyway; drop it unless asked
        if params.distribution is not None and not with_distribution:
            return CodeParams(params.cardinality, params.min_distance)
        return params

    if method == "naive":
        return settle(analyze_naive(code, cap=cap))
    fast = fast_analyzer(code)
    if fast is not None:
        return fast(code, with_distribution=with_distribution)
    if method == "fast":
        raise DomainError(f"no fast analyzer for regime {code.regime!r}")
    return settle(analyze_naive(code, cap=cap))


# -- block bounds -----------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    """Block-structure bounds for an orbit code.

    shape: "diag" (each start row lives in one block), "concat" (every
    block slice has full rank k), or "single". cardinality is exact for
    diag/single (lcm of component cardinalities), None for concat.
    distance_exact is set when the bound is provably tight (pairwise
    coprime component cardinalities, or a single block). window is the
    divisibility interval (lo, hi) with lo | stabilizer exponent | hi.
    """

    shape: str
    component_params: tuple[CodeParams, ...]
    cardinality: int | None
    distance_lower: int | None
    distance_exact: int | None
    sum_bound: int | None
    window: tuple[int, int]


def _row_period(ctx: FieldCtx, v: tuple[int, ...]) -> int:
    if not any(v):
        return 1
    w = ctx.mul_by_x(v)
    t = 1
    while w != v:
        w = ctx.mul_by_x(w)
        t += 1
    return t


def block_bounds(
    code: CyclicOrbitCode, component_params: list[CodeParams] | None = None
) -> BoundsReport:
    """Bounds from per-block component codes.

    The start must be block-diagonal (then cardinality is exactly the lcm
    of component cardinalities and the distance bounds of the diagonal
    case apply) or a full-rank concatenation (distance >= min component
    distance). Single-block codes collapse to their own parameters.
    """
    spec = code.block_structure
    if spec is None:
        raise ShapeMismatchError("block bounds need a block-structured generator")
    blocks = _block_contexts(spec)
    t = len(blocks)
    k = code.k
    rows = code.start.rows

    slices = [
        [r[off : off + width] for r in rows] for off, width, _ in blocks
    ]
    if t == 1:
        own = (
            CodeParams(component_params[0].cardinality, component_params[0].min_distance)
            if component_params
            else analyze(code)
        )
        s = math.lcm(*(_row_period(blocks[0][2], r) for r in rows))
        return BoundsReport(
            shape="single",
            component_params=(own,),
            cardinality=own.cardinality,
            distance_lower=own.min_distance,
            distance_exact=own.min_distance,
            sum_bound=None,
            window=(own.cardinality, s),
        )

    row_blocks = []
    for r in rows:
        live = [i for i, (off, width, _) in enumerate(blocks) if any(r[off : off + width])]
        row_blocks.append(live)
    diag = all(len(live) == 1 for live in row_blocks)
    concat = all(
        Subspace.from_rows(code.q, blocks[i][1], sl).dim == k
        for i, sl in enumerate(slices)
    )

    def component_code(i: int, comp_rows) -> CyclicOrbitCode:
        sub_spec = ElementaryDivisorSpec(spec.field, (spec.blocks[i],))
        return make_code(sub_spec, comp_rows)

    if diag:
        comp_rows_per_block: list[list] = [[] for _ in range(t)]
        for r, live in zip(rows, row_blocks):
            i = live[0]
            off, width, _ = blocks[i]
            comp_rows_per_block[i].append(r[off : off + width])
        if component_params is None:
            # a block that receives no start rows is the invariant zero
            # component: cardinality 1, distance undefined
            component_params = [
                analyze(component_code(i, cr)) if cr else CodeParams(1, None)
                for i, cr in enumerate(comp_rows_per_block)
            ]
        cards = [p.cardinality for p in component_params]
        card = math.lcm(*cards)
        ds = [p.min_distance for p in component_params if p.min_distance is not None]
        lower = min(ds) if ds else None
        pairwise_coprime = all(
            math.gcd(cards[i], cards[j]) == 1
            for i in range(t)
            for j in range(i + 1, t)
        )
        exact = lower if pairwise_coprime else None
        J = {i for i in range(t) if cards[i] == card}
        sum_bound = None
        if J:
            sum_bound = sum(
                component_params[j].min_distance or 0 for j in range(t) if j not in J
            )
        shape = "diag"
    elif concat:
        if component_params is None:
            component_params = [analyze(component_code(i, slices[i])) for i in range(t)]
        card = None
        ds = [p.min_distance for p in component_params if p.min_distance is not None]
        lower = min(ds) if ds else None
        exact = None
        sum_bound = None
        shape = "concat"
    else:
        raise ShapeMismatchError(
            "start is neither block-diagonal nor a full-rank concatenation"
        )

    r_lcm = math.lcm(*(p.cardinality for p in component_params))
    s_lcm = math.lcm(
        *(
            _row_period(ctx, sl_row)
            for (off, width, ctx), sl in zip(blocks, slices)
            for sl_row in sl
        )
    )
    return BoundsReport(
        shape=shape,
        component_params=tuple(
            CodeParams(p.cardinality, p.min_distance) for p in component_params
        ),
        cardinality=card,
        distance_lower=lower,
        distance_exact=exact,
        sum_bound=sum_bound,
        window=(r_lcm, s_lcm),
    )


# -- distribution and duality ----------------------------------------------


def distance_distribution(code: CyclicOrbitCode, cap: int = ORBIT_CAP) -> CodeParams:
    """CodeParams with the full distribution, by orbit enumeration."""
    return analyze_naive(code, cap=cap)


def dual_code(code: CyclicOrbitCode) -> CyclicOrbitCode:
    """The dual orbit code (U^perp)<M^t>."""
    from .linalg import dual

    return general_code(code.generator.transpose(), dual(code.start))


def macwilliams_check(code: CyclicOrbitCode, cap: int = ORBIT_CAP) -> bool:
    """True iff the code and its dual share the nonzero distance enumerator."""
    D = analyze_naive(code, cap=cap).distribution
    Dd = analyze_naive(dual_code(code), cap=cap).distribution
    m = max(len(D), len(Dd))
    pad = lambda t: t + (0,) * (m - len(t))
    return pad(D) == pad(Dd)


# -- code spec (de)serialization -------------------------------------------


def code_to_json_dict(code: CyclicOrbitCode, shape: str = "free") -> dict:
    if code.block_structure is None:
        raise DomainError("only block-structured codes serialize to spec files")
    return {
        "q": code.q,
        "blocks": [
            {"poly": p.to_text(), "exp": e} for p, e in code.block_structure.blocks
        ],
        "start": [" ".join(str(x) for x in row) for row in code.start.rows],
        "shape": shape,
    }


def code_from_json_dict(data: dict) -> tuple[CyclicOrbitCode, str]:
    """Parse {"q", "blocks", "start", "shape"}; returns (code, shape)."""
    if not isinstance(data, dict):
        raise DomainError("code spec must be a JSON object")
    try:
        q = int(data["q"])
    except (KeyError, TypeError, ValueError):
        raise DomainError('code spec needs an integer "q"') from None
    field = PrimeField(q)
    raw_blocks = data.get("blocks")
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise DomainError('code spec needs a non-empty "blocks" list')
    blocks = []
    for i, b in enumerate(raw_blocks):
        if not isinstance(b, dict) or "poly" not in b:
            raise DomainError(f'blocks[{i}] needs a "poly" entry')
        p = Poly.from_text(field, str(b["poly"]))
        try:
            e = int(b.get("exp", 1))
        except (TypeError, ValueError):
            raise DomainError(f'blocks[{i}].exp must be an integer') from None
        blocks.append((p, e))
    spec = ElementaryDivisorSpec.make(field, blocks)
    raw_start = data.get("start")
    if not isinstance(raw_start, list) or not raw_start:
        raise DomainError('code spec needs a non-empty "start" list of rows')
    rows = []
    for row in raw_start:
        try:
            rows.append([int(tok) for tok in str(row).split()])
        except ValueError:
            raise DomainError(f"start row must be space-separated integers: {row!r}") from None
    shape = data.get("shape", "free")
    if shape not in ("diag", "concat", "free"):
        raise DomainError(f'shape must be "diag", "concat" or "free", got {shape!r}')
    try:
        start = Subspace.from_rows(field.q, spec.n, rows)
    except DomainError as err:
        raise DomainError(f"start rows invalid: {err}") from None
    if start.dim != len(rows):
        raise DomainError("start rows must be linearly independent")
    return make_code(spec, start), shape
