import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ekcalc.errors import (AmbientMismatch, DimensionMismatch, DuplicateGenerator, NonConnective,
                           NotPrime, ParityViolation)
from ekcalc.fpgraded import (Bidegree, basis_in_bidegree, columns_from_rows, ext, make_algebra,
                             mat_vec, multiply, poincare_series, poly, rank, rank_kernel)


def steenrod_like():
    return make_algebra(3, [ext("tau0", 1), poly("xi1", 4)])


def brute_basis(alg, b, max_exp=12):
    """Exhaustive scan over exponent vectors; independent of the library enumerator."""
    ranges = [range(2) if e else range(max_exp + 1) for e in alg.exterior]
    hits = [m for m in itertools.product(*ranges) if alg.bidegree(m) == Bidegree(*b)]
    return sorted(hits)


# -- make_algebra ----------------------------------------------------------

def test_make_algebra_valid_examples():
    A = steenrod_like()
    assert A.names == ("tau0", "xi1")
    B = make_algebra(2, [poly("h", 0, 1)])
    assert B.degrees == (Bidegree(0, 1),)


def test_odd_degree_polynomial_rejected_at_odd_prime():
    with pytest.raises(ParityViolation):
        make_algebra(3, [poly("x", 3, 0)])


def test_exterior_rejected_at_two():
    with pytest.raises(ParityViolation):
        make_algebra(2, [ext("x", 1)])


def test_duplicate_generator():
    with pytest.raises(DuplicateGenerator):
        make_algebra(3, [poly("x", 2), poly("x", 4)])


@pytest.mark.parametrize("gens", [
    [poly("u", 0, 0)],
    [poly("a", 2, 0), poly("b", -2, 0)],
    [poly("a", 2, 0), poly("b", -4, 0)],
    [poly("a", 2, 1), poly("b", -2, 0), poly("c", 0, 0)],
])
def test_non_connective(gens):
    with pytest.raises(NonConnective):
        make_algebra(3, gens)


def test_negative_total_degree_is_fine_when_weight_bounds_it():
    A = make_algebra(3, [poly("a", -2, 1), poly("b", 2, 0)])
    assert len(A.basis((0, 1))) == 1  # a*b
    assert A.basis((0, 1)) == brute_basis(A, (0, 1))


def test_not_prime():
    with pytest.raises(NotPrime):
        make_algebra(4, [poly("x", 2)])


# -- bases -----------------------------------------------------------------

def test_basis_examples():
    A = steenrod_like()
    assert basis_in_bidegree(A, (5, 0)) == [A.monomial(tau0=1, xi1=1)]
    assert basis_in_bidegree(A, (5, 0)) == brute_basis(A, (5, 0))
    assert basis_in_bidegree(A, (0, 0)) == [A.unit]
    B = make_algebra(2, [poly("h", 0, 1)])
    assert basis_in_bidegree(B, (0, 3)) == [(3,)]


def test_basis_is_lexicographic():
    A = make_algebra(3, [ext("t0", 1), ext("t1", 5), poly("x1", 4), poly("x2", 16)])
    for d in range(30):
        got = A.basis((d, 0))
        assert got == sorted(got) == brute_basis(A, (d, 0))


gen_specs = st.lists(
    st.tuples(st.booleans(), st.integers(0, 4), st.integers(0, 3)), min_size=1, max_size=4,
).map(lambda xs: [ext(f"g{k}", 2 * t + 1, w) if e else poly(f"g{k}", 2 * t + 2, w)
                  for k, (e, t, w) in enumerate(xs)])


@settings(max_examples=40, deadline=None)
@given(gen_specs)
def test_basis_count_matches_series(gens):
    A = make_algebra(3, gens)
    table = poincare_series(A, (14, 5))
    for t in range(15):
        for w in range(6):
            basis = A.basis((t, w))
            assert len(basis) == table[(t, w)]
            assert basis == brute_basis(A, (t, w), max_exp=8)


def test_series_fallback_path_agrees_with_enumeration():
    A = make_algebra(3, [poly("a", -2, 1), poly("b", 2, 0), ext("c", 1, 1)])
    table = A.poincare_series((6, 3))
    for t in range(7):
        for w in range(4):
            assert table[(t, w)] == len(brute_basis(A, (t, w)))


# -- multiplication --------------------------------------------------------

def test_multiply_examples():
    A = steenrod_like()
    tau0, xi1 = A.gen("tau0"), A.gen("xi1")
    assert multiply(tau0, tau0).is_zero()
    assert multiply(tau0, xi1) == A.mono(A.monomial(tau0=1, xi1=1))
    assert multiply(xi1, tau0) == multiply(tau0, xi1)
    B = make_algebra(2, [poly("h", 0, 1)])
    h = B.gen("h")
    assert (h * h + h) * h == h ** 3 + h ** 2


def test_odd_generators_anticommute():
    A = make_algebra(3, [ext("a", 1), ext("b", 5), poly("c", 2)])
    a, b = A.gen("a"), A.gen("b")
    assert a * b == -(b * a)
    assert a * b != b * a


def test_ambient_mismatch():
    A, B = steenrod_like(), steenrod_like()
    with pytest.raises(AmbientMismatch):
        multiply(A.gen("tau0"), B.gen("xi1"))


def _algebra_for_props():
    return make_algebra(5, [ext("a", 1, 1), ext("b", 3, 0), poly("c", 2, 1), poly("d", 4, 0),
                            ext("e", 2, 1)])


ALG = _algebra_for_props()


@st.composite
def homogeneous(draw):
    t = draw(st.integers(0, 10))
    w = draw(st.integers(0, 3))
    basis = ALG.basis((t, w))
    if not basis:
        return ALG.zero() if draw(st.booleans()) else ALG.one()
    coeffs = draw(st.lists(st.integers(0, 4), min_size=len(basis), max_size=len(basis)))
    return ALG.element(dict(zip(basis, coeffs)))


@settings(max_examples=80, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous())
def test_associative_and_unital(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert ALG.one() * x == x == x * ALG.one()


@settings(max_examples=80, deadline=None)
@given(homogeneous(), homogeneous())
def test_sign_rule(x, y):
    if x.is_zero() or y.is_zero():
        return
    sign = (-1) ** (x.bidegree.t * y.bidegree.t)
    assert (x * y - (y * x) * sign).is_zero()


# -- linear algebra --------------------------------------------------------

def test_rank_kernel_identity():
    cols, n = columns_from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2)
    assert rank_kernel(cols, n, 2) == (3, [])


def test_rank_kernel_zero():
    cols, n = columns_from_rows([[0, 0], [0, 0]], 3)
    rk, ker = rank_kernel(cols, n, 3)
    assert rk == 0
    assert sorted(ker) == [[0, 1], [1, 0]]


def test_rank_kernel_rank_one_mod5():
    # Hand reduction: row2 - 2*row1 = 0, so x + 2y = 0 and (2, -1) spans the kernel.
    cols, n = columns_from_rows([[1, 2], [2, 4]], 5)
    rk, ker = rank_kernel(cols, n, 5)
    assert rk == 1 and len(ker) == 1
    v = ker[0]
    assert any([(c * 2) % 5, (c * -1) % 5] == v for c in range(1, 5))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        rank_kernel([{5: 1}], 3, 2)
    with pytest.raises(DimensionMismatch):
        columns_from_rows([[1, 2], [1]], 3)


def dense_rank(rows, p):
    """Plain row reduction on a dense copy; the oracle for the sparse path."""
    m = [[a % p for a in r] for r in rows]
    rk, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][c], -1, p)
        m[rk] = [a * inv % p for a in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 7), st.integers(1, 7), st.data())
def test_rank_kernel_random(p, nr, nc, data):
    rows = [data.draw(st.lists(st.sampled_from([0, 0, 0, 1, 2, 3, 6]), min_size=nc, max_size=nc))
            for _ in range(nr)]
    cols, n = columns_from_rows(rows, p)
    rk, ker = rank_kernel(cols, n, p)
    assert rk + len(ker) == nc
    assert rk == dense_rank(rows, p) == rank(cols, p)
    for v in ker:
        assert mat_vec(cols, v, p) == {}
    if ker:
        assert dense_rank(ker, p) == len(ker)
