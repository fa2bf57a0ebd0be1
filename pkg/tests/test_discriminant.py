import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from discdet.algebra import QQ, ZZ, build_extension
from discdet.corpus import random_integer_form, random_integer_matrix, random_root_pairs, random_sylvester
from discdet.discriminant import (DiscriminantError, SymmetricMatrix, a_exponent, binary_disc_from_roots,
                                  binary_form_from_roots, determinant, disc_d_integer, disc_degree,
                                  discriminant_report, epsilon, find_singular_point, quadric_disc,
                                  salmon_disc, salmon_disc_printed, topology_sign)
from discdet.forms import (SylvesterCoefficients, act_linear, fermat_form, parse_form, reduce_mod,
                           sylvester_form)


def clebsch():
    return sylvester_form(SylvesterCoefficients(1, 1, 1, 1, 1))


def test_exponents():
    assert a_exponent(2, 3) == 5 and a_exponent(1, 3) == 3
    assert a_exponent(0, 2) == 0 and disc_degree(2, 3) == 32


def test_golden_values():
    assert discriminant_report(fermat_form(3, 3)).disc_d == 3**9
    rep = discriminant_report(fermat_form(4, 3))
    assert rep.disc_d == 3**27 and rep.disc_r == 3**32 and rep.signed == -(3**27)
    assert discriminant_report(clebsch()).disc_d == -5 * 3**32
    third = discriminant_report(parse_form("1/3*x0^3", 4, QQ) + _to_qq(clebsch()).scale(Fraction(1, 3))
                                - parse_form("1/3*x0^3", 4, QQ))
    assert third.disc_d == -5


def _to_qq(f):
    from discdet.forms import HomogeneousForm
    return HomogeneousForm(f.nvars, f.degree, QQ, {m: Fraction(c) for m, c in f.coeffs.items()})


@pytest.mark.parametrize("n", [0, 2, 4])
def test_unit_quadric(n):
    f = fermat_form(n + 2, 2)
    assert discriminant_report(f).disc_r == 2 ** (n + 2)


def test_binary_cubic_example():
    rep = discriminant_report(parse_form("x0^3 - x0*x1^2", 2, ZZ))
    assert rep.disc_d == -4 and rep.signed == 4


def test_epsilon_examples():
    assert epsilon(2, 3) == -1 and epsilon(0, 2) == -1 and epsilon(2, 2) == 1
    with pytest.raises(DiscriminantError):
        epsilon(1, 3)


def test_rejects_linear_forms():
    with pytest.raises(DiscriminantError):
        discriminant_report(parse_form("x0 + x1", 2, ZZ))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_roots_of_unity_product(d):
    # product over ordered pairs of distinct d-th roots of unity is (-1)^(d-1) d^d
    f = parse_form(f"x0^{d} - x1^{d}", 2, ZZ)
    assert discriminant_report(f).disc_d == (-1) ** (d - 1) * d**d


def test_binary_oracle_examples():
    assert binary_disc_from_roots([(1, 0), (0, 1)]) == -1
    assert discriminant_report(parse_form("x0*x1", 2, ZZ)).signed == 1
    assert binary_disc_from_roots([(1, 2), (1, 2), (1, 0)]) == 0


def test_quadric_examples():
    assert quadric_disc(SymmetricMatrix.from_quadratic_form(fermat_form(4, 2))) == 16
    assert quadric_disc(SymmetricMatrix.from_quadratic_form(parse_form("x0*x1 + x2*x3", 4, ZZ))) == 1
    A = SymmetricMatrix.from_quadratic_form(parse_form("x0^2 + x0*x1 + x1^2", 2, ZZ))
    assert A.entries == ((2, 1), (1, 2)) and quadric_disc(A) == 3


def test_symmetric_matrix_roundtrip():
    f = parse_form("x0^2 - 3*x0*x2 + 2*x1*x2 + 5*x2^2", 3, ZZ)
    assert SymmetricMatrix.from_quadratic_form(f).to_quadratic_form() == f


def test_salmon_examples():
    assert salmon_disc(SylvesterCoefficients(0, 1, 1, 1, 1)) == 1
    assert salmon_disc(SylvesterCoefficients(1, 1, 1, 1, 1)) == -(3**5) * 5
    s = SylvesterCoefficients(0, 2, -1, 3, 1)
    # t = 0, and the only nonzero 4-fold product is 2 * -1 * 3 * 1
    assert salmon_disc(s) == (-6) ** 8


def test_printed_grouping_disagrees_with_resultant():
    s = SylvesterCoefficients(1, 1, 1, 1, 1)
    assert salmon_disc_printed(s) != salmon_disc(s)
    assert discriminant_report(sylvester_form(s)).disc_d == 3**27 * salmon_disc(s)


@pytest.mark.parametrize("seed", range(3))
def test_salmon_random(seed):
    s = random_sylvester(random.Random(seed))
    assert disc_d_integer(sylvester_form(s)) == 3**27 * salmon_disc(s)


def test_topology_examples():
    r = topology_sign(2, 3)
    assert (r.phi, r.e_real, r.N, r.sign) == (9, 1, 5, -1) and r.matches_epsilon
    r = topology_sign(2, 2)
    assert (r.phi, r.e_real, r.N, r.sign) == (4, 0, 2, 1)
    for d in range(1, 9):
        r = topology_sign(0, d)
        assert r.phi == d and r.sign == (-1) ** (d * (d - 1) // 2)


def test_topology_matches_epsilon_everywhere():
    for n in range(0, 11, 2):
        for d in range(2, 13):
            assert topology_sign(n, d).sign == epsilon(n, d)


def test_singular_point_examples():
    F3, F2 = build_extension(3, 1), build_extension(2, 1)
    w = find_singular_point(parse_form("x0^2*x1", 2, F3), max_ext=1)
    # the double root is x0 = 0; at [1:0] the partial in x1 is x0^2 = 1
    assert w is not None and w.degree == 1 and tuple(w.point) == (0, 1)
    assert find_singular_point(fermat_form(4, 3, F2), max_ext=2) is None
    assert discriminant_report(fermat_form(4, 3, F2)).disc_d == 1
    assert find_singular_point(fermat_form(4, 3, F3)) is not None
    assert discriminant_report(fermat_form(4, 3, F3)).disc_d == 0


SHAPES = [(0, 2), (0, 3), (0, 4), (1, 2), (2, 2), (1, 3)]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(SHAPES), st.integers(-2, 3))
def test_scaling_law(seed, shape, lam):
    n, d = shape
    f = random_integer_form(random.Random(seed), n + 2, d)
    assert disc_d_integer(f.scale(lam)) == lam ** disc_degree(n, d) * disc_d_integer(f)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(SHAPES))
def test_substitution_law(seed, shape):
    n, d = shape
    rng = random.Random(seed)
    f = random_integer_form(rng, n + 2, d)
    A = random_integer_matrix(rng, n + 2)
    lhs = disc_d_integer(act_linear(f, A))
    assert lhs == determinant(A) ** (d * (d - 1) ** (n + 1)) * disc_d_integer(f)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(SHAPES), st.sampled_from([2, 3, 5, 7, 11]))
def test_reduction_compatibility(seed, shape, p):
    n, d = shape
    f = random_integer_form(random.Random(seed), n + 2, d)
    F = build_extension(p, 1)
    assert discriminant_report(reduce_mod(f, F)).disc_d == disc_d_integer(f) % p


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_binary_oracle(seed, d):
    pairs = random_root_pairs(random.Random(seed), d)
    f = binary_form_from_roots(pairs)
    rep = discriminant_report(f)
    assert rep.disc_d == binary_disc_from_roots(pairs)
    half = 1
    for i in range(d):
        for j in range(i + 1, d):
            half *= pairs[i][0] * pairs[j][1] - pairs[j][0] * pairs[i][1]
    assert rep.signed == half**2
