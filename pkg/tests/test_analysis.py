"""Orbit enumeration, fast analyzers vs the naive oracle, bounds, duality."""

import math
import random
from itertools import product

import pytest

from orbitcodes import (
    CodeParams,
    DomainError,
    ElementaryDivisorSpec,
    Mat,
    OrbitCapError,
    Poly,
    PrimeField,
    ShapeMismatchError,
    Subspace,
    analyze,
    analyze_naive,
    block_bounds,
    build_generator,
    code_from_json_dict,
    code_to_json_dict,
    codeword,
    dual_code,
    enumerate_orbit,
    general_code,
    least_primitive,
    macwilliams_check,
    make_code,
    matrix_order,
    subspace_distance,
)

from conftest import (
    P2,
    P3,
    X2_1_F3,
    X2_X_1,
    X2_X_2_F3,
    X3_X_1,
    X4_NONPRIM,
    X4_X_1,
    X6_X_1,
    poly_of,
    rand_full_rank,
    single_block,
)

SEED = 271828


def params_pair(code):
    fast = analyze(code, method="fast", with_distribution=True)
    naive = analyze(code, method="naive", with_distribution=True)
    return fast, naive


# -- construction and orbit enumeration -------------------------------------


def test_make_code_validates_start():
    spec = single_block(X4_X_1)
    with pytest.raises(DomainError):
        make_code(spec, [(0, 0, 0, 0)])
    with pytest.raises(DomainError):
        make_code(spec, [(1, 0, 0, 0), (1, 0, 0, 0)])  # rank 1, two rows
    with pytest.raises(DomainError):
        make_code(spec, [(1, 0, 0)])  # ambient mismatch


def test_general_code_requires_invertible():
    A = Mat.make(2, [[1, 1], [1, 1]])
    with pytest.raises(DomainError):
        general_code(A, Subspace.from_rows(2, 2, [(1, 0)]))


def test_enumerate_orbit_structure():
    code = make_code(single_block(X4_X_1), [(1, 0, 0, 0), (0, 1, 1, 0)])
    orbit = enumerate_orbit(code)
    assert len(orbit) == len(set(orbit)) == 5
    for i, W in enumerate(orbit):
        assert W == codeword(code, i)
    assert codeword(code, 5) == orbit[0]
    assert codeword(code, -1) == orbit[4]


def test_enumerate_orbit_cap():
    code = make_code(single_block(X6_X_1), [(1, 0, 0, 0, 0, 0)])
    with pytest.raises(OrbitCapError):
        enumerate_orbit(code, cap=10)


def test_regime_labels():
    assert make_code(single_block(X6_X_1), [(1,) * 6]).regime == "primitive"
    assert make_code(single_block(X4_NONPRIM), [(1, 0, 0, 0)]).regime == "irreducible"
    two = ElementaryDivisorSpec.make(P2, [(X2_X_1, 1), (X3_X_1, 1)])
    assert make_code(two, [(1, 0, 1, 0, 0)]).regime == "completely_reducible"
    sq = ElementaryDivisorSpec.make(P2, [(X2_X_1, 2)])
    assert make_code(sq, [(1, 0, 0, 0)]).regime == "non_semisimple"


def test_cardinality_divides_generator_order():
    rng = random.Random(SEED)
    spec = single_block(X6_X_1)
    for _ in range(25):
        code = make_code(spec, rand_full_rank(rng, 2, rng.randrange(1, 4), 6))
        params = analyze(code, method="fast")
        assert 63 % params.cardinality == 0
        if params.min_distance is not None:
            assert params.min_distance % 2 == 0
            assert 2 <= params.min_distance <= 2 * code.k


# -- golden parameter sets --------------------------------------------------


def test_spread_goldens_naive():
    code = make_code(
        single_block(X6_X_1),
        [(1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 1, 0), (1, 1, 1, 1, 0, 0)],
    )
    assert analyze_naive(code) == CodeParams(9, 6, (1, 0, 0, 8))


def test_nonprimitive_golden():
    code = make_code(single_block(X4_NONPRIM), [(1, 0, 0, 0), (0, 0, 1, 1)])
    fast, naive = params_pair(code)
    assert fast == naive
    assert (fast.cardinality, fast.min_distance) == (5, 4)


def test_block_example_goldens():
    spec = ElementaryDivisorSpec.make(P2, [(X4_X_1, 1), (X6_X_1, 1)])
    U1 = [(1, 0, 0, 0), (0, 1, 1, 0)]
    U2 = [(1, 0, 0, 0, 0, 0), (0, 1, 0, 1, 1, 1)]
    diag_rows = [r + (0,) * 6 for r in U1] + [(0,) * 4 + r for r in U2]
    concat_rows = [a + b for a, b in zip(U1, U2)]
    diag_fast, diag_naive = params_pair(make_code(spec, diag_rows))
    assert diag_fast == diag_naive
    assert (diag_fast.cardinality, diag_fast.min_distance) == (105, 4)
    cat_fast, cat_naive = params_pair(make_code(spec, concat_rows))
    assert cat_fast == cat_naive
    assert (cat_fast.cardinality, cat_fast.min_distance) == (315, 4)


def test_full_space_code_has_no_distance():
    code = make_code(single_block(X4_X_1), Subspace.from_rows(2, 4, Mat.identity(2, 4).rows))
    params = analyze(code, method="naive")
    assert params.cardinality == 1
    assert params.min_distance is None
    assert analyze(code, method="fast") == params


# -- analyzer equivalence ---------------------------------------------------


def _all_subspaces(q, k, n):
    seen = set()
    for rows in product(product(range(q), repeat=n), repeat=k):
        S = Subspace.from_rows(q, n, rows)
        if S.dim == k and S.rows not in seen:
            seen.add(S.rows)
            yield S


def test_p_squared_exhaustive_sweep():
    # every 2-dim subspace of F_2^4 under the (x^2+x+1)^2 block
    spec = ElementaryDivisorSpec.make(P2, [(X2_X_1, 2)])
    count = 0
    for S in _all_subspaces(2, 2, 4):
        fast, naive = params_pair(make_code(spec, S))
        assert fast == naive, f"start {S.rows}"
        count += 1
    assert count == 35


_regime_specs = {
    "primitive": [single_block(X4_X_1), single_block(X6_X_1), single_block(X2_X_2_F3)],
    "irreducible": [
        single_block(X4_NONPRIM),
        single_block(X2_1_F3),
        single_block(Poly.make(P2, (1, 1, 1, 0, 1, 0, 1))),  # order 21 sextic
    ],
    "completely_reducible": [
        ElementaryDivisorSpec.make(P2, [(X2_X_1, 1), (X3_X_1, 1)]),
        ElementaryDivisorSpec.make(P2, [(X2_X_1, 1), (X4_X_1, 1)]),
        ElementaryDivisorSpec.make(P3, [(poly_of(3, [1, 1]), 1), (X2_X_2_F3, 1)]),
    ],
    "non_semisimple": [
        ElementaryDivisorSpec.make(P2, [(X2_X_1, 2)]),
        ElementaryDivisorSpec.make(P2, [(X3_X_1, 2)]),
        ElementaryDivisorSpec.make(P3, [(X2_X_2_F3, 2)]),
    ],
}


@pytest.mark.parametrize("regime", sorted(_regime_specs))
def test_fast_equals_naive_per_regime(regime):
    rng = random.Random(SEED + hash(regime) % 1000)
    for _ in range(40):
        spec = rng.choice(_regime_specs[regime])
        q, n = spec.field.q, spec.n
        k = rng.randrange(1, min(n, 4) + 1)
        code = make_code(spec, rand_full_rank(rng, q, k, n))
        assert code.regime == regime
        fast, naive = params_pair(code)
        assert fast == naive, f"{regime} start {code.start.rows}"


def test_q3_primitive_stabilizer_contains_minus_one():
    rng = random.Random(SEED)
    spec = single_block(X2_X_2_F3)
    half = (3**2 - 1) // 2
    for _ in range(30):
        code = make_code(spec, rand_full_rank(rng, 3, 1, 2))
        assert half % analyze(code, method="fast").cardinality == 0


def test_distribution_contract():
    rng = random.Random(SEED * 3)
    spec = single_block(X6_X_1)
    for _ in range(15):
        code = make_code(spec, rand_full_rank(rng, 2, rng.randrange(1, 4), 6))
        params = analyze(code, method="fast", with_distribution=True)
        dist = params.distribution
        assert dist[0] == 1
        assert sum(dist) == params.cardinality
        assert len(dist) == code.k + 1
        # entry i counts codewords at distance 2i from the start
        naive = analyze(code, method="naive", with_distribution=True)
        assert dist == naive.distribution
    plain = analyze(code, method="fast")
    assert plain.distribution is None


def test_analyze_method_validation():
    code = make_code(single_block(X4_X_1), [(1, 0, 0, 0)])
    with pytest.raises(DomainError):
        analyze(code, method="telepathy")


def test_general_regime_falls_back_to_naive():
    # invertible non-block generator: only the oracle applies
    A = Mat.make(2, [[0, 1, 0], [0, 0, 1], [1, 1, 0]]) * Mat.make(
        2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    )
    code = general_code(A, Subspace.from_rows(2, 3, [(1, 0, 0)]))
    assert code.regime == "general"
    params = analyze(code)
    assert params.cardinality == matrix_order(A) // _stab_size(code)
    with pytest.raises(DomainError):
        analyze(code, method="fast")


def _stab_size(code):
    M = code.generator
    order = matrix_order(M)
    count = 0
    A = Mat.identity(code.q, code.n)
    for _ in range(order):
        if code.start.transform(A) == code.start:
            count += 1
        A = A * M
    return count


# -- block bounds -----------------------------------------------------------


def _two_block_code(rows):
    spec = ElementaryDivisorSpec.make(P2, [(X4_X_1, 1), (X6_X_1, 1)])
    return make_code(spec, rows)


def test_block_bounds_diag_golden():
    U1 = [(1, 0, 0, 0), (0, 1, 1, 0)]
    U2 = [(1, 0, 0, 0, 0, 0), (0, 1, 0, 1, 1, 1)]
    code = _two_block_code([r + (0,) * 6 for r in U1] + [(0,) * 4 + r for r in U2])
    rep = block_bounds(code)
    assert rep.shape == "diag"
    assert [p.cardinality for p in rep.component_params] == [5, 21]
    assert [p.min_distance for p in rep.component_params] == [4, 4]
    assert rep.cardinality == 105
    assert rep.distance_lower == 4
    assert rep.distance_exact == 4  # gcd(5, 21) = 1
    assert rep.window[0] == 105 and rep.window[1] % 105 == 0


def test_block_bounds_diag_sum_bound():
    # components of equal cardinality: lcm attained by both, sum bound empty-J
    spec = ElementaryDivisorSpec.make(P2, [(X2_X_1, 1), (X2_X_1, 1)])
    code = make_code(spec, [(1, 0, 0, 0), (0, 0, 1, 0)])
    rep = block_bounds(code)
    assert rep.shape == "diag"
    assert rep.cardinality == 3
    assert rep.sum_bound is not None
    assert analyze(code, method="naive").min_distance >= rep.distance_lower


def test_block_bounds_concat_golden():
    U1 = [(1, 0, 0, 0), (0, 1, 1, 0)]
    U2 = [(1, 0, 0, 0, 0, 0), (0, 1, 0, 1, 1, 1)]
    code = _two_block_code([a + b for a, b in zip(U1, U2)])
    rep = block_bounds(code)
    assert rep.shape == "concat"
    assert rep.distance_lower == 4
    assert rep.distance_exact is None
    lo, hi = rep.window
    assert lo == 105 and hi == 315
    card = analyze(code, method="fast").cardinality
    assert lo <= card <= hi and hi % card == 0 and card % lo == 0


def test_block_bounds_zero_component():
    # start entirely inside the first block: second component is trivial
    code = _two_block_code([(1, 0, 0, 0) + (0,) * 6, (0, 1, 1, 0) + (0,) * 6])
    rep = block_bounds(code)
    assert rep.shape == "diag"
    assert [p.cardinality for p in rep.component_params] == [5, 1]
    assert rep.cardinality == 5


def test_block_bounds_mixed_start_rejected():
    # row straddles both blocks without full slice rank: neither diag nor concat
    code = _two_block_code(
        [(1, 0, 0, 0, 1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0, 0, 0)]
    )
    with pytest.raises(ShapeMismatchError):
        block_bounds(code)


def test_block_bounds_single_block_collapse():
    code = make_code(single_block(X4_X_1), [(1, 0, 0, 0), (0, 1, 1, 0)])
    rep = block_bounds(code)
    assert rep.cardinality == 5
    assert rep.distance_exact == 4


# -- duality ----------------------------------------------------------------


def test_dual_code_involution():
    code = make_code(single_block(X4_X_1), [(1, 0, 0, 0), (0, 1, 1, 0)])
    dd = dual_code(dual_code(code))
    assert dd.start == code.start
    assert dd.generator == code.generator


def test_dual_distance_preserved_examples():
    rng = random.Random(SEED - 1)
    spec = single_block(X6_X_1)
    for _ in range(10):
        code = make_code(spec, rand_full_rank(rng, 2, rng.randrange(1, 6), 6))
        a = analyze_naive(code)
        b = analyze_naive(dual_code(code))
        assert a.cardinality == b.cardinality
        assert a.min_distance == b.min_distance

        def trim(t):
            # tuple lengths are dim+1 and the dims differ; values agree
            out = list(t)
            while out and out[-1] == 0:
                out.pop()
            return out

        assert trim(a.distribution) == trim(b.distribution)
        assert macwilliams_check(code)


# -- JSON spec round trip ---------------------------------------------------

def test_json_round_trip():
    code = make_code(single_block(X4_NONPRIM), [(1, 0, 0, 0), (0, 0, 1, 1)])
    data = code_to_json_dict(code, shape="free")
    back, shape = code_from_json_dict(data)
    assert shape == "free"
    assert back.start == code.start
    assert back.generator == code.generator
    assert back.block_structure == code.block_structure


@pytest.mark.parametrize(
    "mutate,field",
    [
        (lambda d: d.pop("q"), "q"),
        (lambda d: d.update(q="two"), "q"),
        (lambda d: d.update(blocks=[]), "blocks"),
        (lambda d: d["blocks"][0].update(poly="1 2 x"), "poly"),
        (lambda d: d["blocks"][0].update(exp="one"), "exp"),
        (lambda d: d.update(start=[]), "start"),
        (lambda d: d.update(start=["1 0 0 0", "1 0 0"]), "start"),
        (lambda d: d.update(shape="wedge"), "shape"),
    ],
)
def test_json_errors_name_the_field(mutate, field):
    code = make_code(single_block(X4_NONPRIM), [(1, 0, 0, 0), (0, 0, 1, 1)])
    data = code_to_json_dict(code)
    mutate(data)
    with pytest.raises(DomainError) as err:
        code_from_json_dict(data)
    assert field in str(err.value)
