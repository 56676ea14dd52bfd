import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from monokit import padic
from monokit.padic import INF, PadicError

PRIMES = [2, 3, 5, 7, 11]


def test_vp_examples():
    assert padic.vp(12, 2) == 2
    assert padic.vp(Fraction(1, 9), 3) == -2
    assert padic.vp(0, 5) == INF
    assert padic.vp("-50/3", 5) == 2
    with pytest.raises(PadicError):
        padic.vp(3, 4)


@given(st.fractions().filter(lambda x: x != 0), st.fractions().filter(lambda x: x != 0), st.sampled_from(PRIMES))
def test_vp_is_a_valuation(x, y, p):
    assert padic.vp(x * y, p) == padic.vp(x, p) + padic.vp(y, p)
    assert padic.vp(x + y, p) >= min(padic.vp(x, p), padic.vp(y, p))


def test_newton_examples():
    for p in (2, 3, 5):
        assert padic.newton_polygon_slopes([p ** 3, -p, 1], p) == [1, 2]
        assert padic.newton_polygon_slopes([-1, 0, 1], p) == [0, 0]
        assert padic.newton_polygon_slopes([-p, 1], p) == [1]
    assert padic.newton_polygon_slopes([0, 0, 1], 3) == [INF, INF]
    with pytest.raises(PadicError):
        padic.newton_polygon_slopes([0, 0], 3)


def split(roots):
    c = [Fraction(1)]
    for a in roots:
        c = [-a * c[0]] + [c[i - 1] - a * c[i] for i in range(1, len(c))] + [c[-1]]
    return c


@given(st.lists(st.fractions(max_denominator=500).map(lambda f: f * 9), min_size=1, max_size=7),
       st.sampled_from([2, 3, 5]), st.fractions(min_value=1, max_value=7).filter(lambda f: f != 0))
def test_newton_polygon_sound_on_split_polynomials(roots, p, lead):
    coeffs = [lead * c for c in split(roots)]
    assert padic.newton_polygon_slopes(coeffs, p) == sorted(padic.vp(a, p) for a in roots)


def test_cyclotomic_polynomials():
    assert padic.cyclotomic_coefficients(1) == [-1, 1]
    assert padic.cyclotomic_coefficients(4) == [1, 0, 1]
    assert padic.cyclotomic_coefficients(9) == [1, 0, 0, 1, 0, 0, 1]
    assert padic.cyclotomic_coefficients(12) == [1, 0, -1, 0, 1]
    for m in range(1, 40):
        assert len(padic.cyclotomic_coefficients(m)) - 1 == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def test_cyclotomic_valuation():
    for p in (2, 3, 5, 7):
        assert padic.cyclotomic_unit_valuation(p, p, 1) == Fraction(1, p - 1)
        assert padic.stated_cyclotomic_exponent(p, 1) == Fraction(1, p - 1)
    assert padic.cyclotomic_unit_valuation(3, 3, 2) == Fraction(1, 6)
    assert padic.stated_cyclotomic_exponent(3, 2) == Fraction(1, 4)
    assert padic.cyclotomic_unit_valuation(3, 2, 3) == 0
    assert padic.cyclotomic_unit_valuation(5, 7, 1) == 0
    with pytest.raises(PadicError):
        padic.cyclotomic_unit_valuation(3, 4, 1)
    with pytest.raises(PadicError):
        padic.cyclotomic_unit_valuation(3, 3, 0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cyclotomic_valuation_decreasing(p):
    vals = [padic.cyclotomic_unit_valuation(p, p, n) for n in range(1, 5)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(v <= Fraction(1, p - 1) for v in vals)


def det_by_permutations(A):
    n = len(A)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod((A[i][perm[i]] for i in range(n)), start=Fraction(1))
    return total


def charpoly_oracle(M):
    """det(xI - M) by evaluating at n+1 points and interpolating (Lagrange)."""
    n = len(M)
    xs = list(range(n + 1))
    ys = [det_by_permutations([[Fraction(int(i == j) * x) - M[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for k, (xk, yk) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= xm * basis[i + 1]
            denom *= xk - xm
        for i in range(n + 1):
            coeffs[i] += yk * basis[i] / denom
    return coeffs[::-1]


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.fractions(max_denominator=20, min_value=-30, max_value=30), min_size=n, max_size=n),
                       min_size=n, max_size=n))


@given(matrices)
def test_charpoly_matches_determinant_oracle(M):
    assert padic.charpoly(M) == charpoly_oracle(M)


def test_charpoly_example():
    assert padic.charpoly([[1, 2], [3, 4]]) == [1, -5, -2]


def test_eigenvalue_bound_examples():
    for p in (2, 3, 5):
        # eigenvalues 0 and 2p
        assert padic.eigenvalue_deviation_bound([[p, p], [p, p]], p) == padic.vp(2 * p, p)
        assert padic.eigenvalue_deviation_bound([[p, 0, 0], [0, p, 0], [0, 0, p]], p) == 1
    assert padic.eigenvalue_deviation_bound([[0, 0], [0, 0]], 3) == INF


@given(matrices, st.sampled_from([2, 3, 5]), st.integers(0, 3))
def test_eigenvalue_bound_at_least_entry_valuation(M, p, k):
    M = [[x * p ** k for x in row] for row in M]
    assert padic.eigenvalue_deviation_bound(M, p) >= padic.min_entry_valuation(M, p)


def mat_pow(G, m):
    n = len(G)
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(m):
        R = padic.matmul(R, G)
    return R


@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(1, 2))
def test_certified_generators_have_infinite_order(p, pattern, k):
    G = [[Fraction(int(i == j)) + p ** k * pattern[2 * i + j] for j in range(2)] for i in range(2)]
    cert = padic.connectedness_certificate([G], p, 1)
    assert cert.passed
    identity = [[Fraction(int(i == j)) for j in range(2)] for i in range(2)]
    if G != identity:
        assert all(mat_pow(G, m) != identity for m in range(1, 13))


def test_certificate_examples():
    G = [[1, 3], [0, 1]]
    assert padic.connectedness_certificate([G], 3, 1).passed
    r = padic.connectedness_certificate([G], 3, Fraction(1, 3))
    assert not r.passed and "q <= 1/(p-1)" in r.reasons
    assert padic.connectedness_certificate([[[3, 0], [0, 3]]], 2, 1).passed
    r = padic.connectedness_certificate([[[1, 1], [0, 1]]], 3, 1)
    assert not r.passed and any("congruent" in x for x in r.reasons)
    js = r.to_json()
    assert js["threshold"] == "1/2" and js["per_generator"][0]["congruence_valuation"] == "0"


def test_certificate_rejections():
    with pytest.raises(PadicError):
        padic.connectedness_certificate([[[1, 0], [0, 0]]], 3, 1)
    with pytest.raises(PadicError):
        padic.connectedness_certificate([[[1, 0], [0, 1]]], 3, 0)
    with pytest.raises(PadicError):
        padic.parse_matrix([[1, 2]])


def test_parse_matrix_strings():
    assert padic.parse_matrix([["3/7", "1"], ["0", "-2/5"]]) == [[Fraction(3, 7), 1], [0, Fraction(-2, 5)]]


def test_larsen_cases():
    assert padic.larsen_classify(2, 2, False, False, True) == padic.SL_OR_FINITE
    assert padic.larsen_classify(2, 2, False, False, False) == padic.SL_OR_FINITE_MOD_SCALARS
    assert padic.larsen_classify(4, 3, True, False, True) == padic.ORTHOGONAL_OR_FINITE
    assert padic.larsen_classify(4, 3, False, True, True) == padic.SYMPLECTIC_OR_FINITE
    assert padic.larsen_classify(2, 3, False, True, True) == padic.INCONCLUSIVE
    assert padic.larsen_classify(4, 3, True, True, True) == padic.INCONCLUSIVE
    assert padic.larsen_classify(4, 5, False, False, True) == padic.INCONCLUSIVE
    with pytest.raises(PadicError):
        padic.larsen_classify(2, 2, True, False, True)
    with pytest.raises(PadicError):
        padic.larsen_classify(2, 0, False, False, True)


def test_almost_simplicity():
    assert padic.almost_simplicity_test(6, 3, False) == padic.ALMOST_SIMPLE
    assert padic.almost_simplicity_test(8, 10, True) == padic.ALMOST_SIMPLE
    assert padic.almost_simplicity_test(6, 4, False) == padic.INCONCLUSIVE
    assert padic.almost_simplicity_test(9, 50) == padic.ALMOST_SIMPLE
    with pytest.raises(PadicError):
        padic.almost_simplicity_test(1, 0)


def test_prime_helpers():
    assert [r for r in range(1, 30) if padic.is_prime_power(r)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
    assert [p for p in range(30) if padic.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_growth_estimate():
    for p in (2, 3):
        assert padic.analytic_dimension_estimate([1, p ** 2, p ** 4, p ** 6], p) == 2
        assert padic.analytic_dimension_estimate([1, p, p ** 3, p ** 6], p) is None
    assert padic.analytic_dimension_estimate([1, 1, 1, 1], 5) == 0
    assert padic.analytic_dimension_estimate([4], 2) is None
    with pytest.raises(PadicError):
        padic.analytic_dimension_estimate([1, 6], 2)
    with pytest.raises(PadicError):
        padic.analytic_dimension_estimate([1, 3], 2)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 4), st.lists(st.integers(0, 4), max_size=4), st.integers(1, 5))
def test_growth_recovers_constructed_exponent(p, k, prefix, tail):
    sizes = [1]
    for e in prefix + [k] * (3 * tail + 2 * len(prefix) + 2):
        sizes.append(sizes[-1] * p ** e)
    assert padic.analytic_dimension_estimate(sizes, p) == k
