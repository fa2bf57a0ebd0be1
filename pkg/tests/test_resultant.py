import random

import pytest
from hypothesis import given, settings, strategies as st

from discdet.algebra import ZZ, build_extension
from discdet.discriminant import determinant
from discdet.enumeration import first_common_zero
from discdet.forms import (HomogeneousForm, derive, fermat_form, from_dense, num_monomials, parse_form,
                           reduce_mod, variable)
from discdet.resultant import (ResultantError, macaulay_layout, macaulay_resultant, resultant_mod_p)


def linear(coeffs):
    N = len(coeffs)
    return HomogeneousForm(N, 1, ZZ, {tuple(int(i == j) for j in range(N)): c for i, c in enumerate(coeffs)})


def test_coordinate_forms():
    assert macaulay_resultant([variable(0, 2), variable(1, 2)]) == 1


@pytest.mark.parametrize("a,b,c,d", [(1, 2, 3, 4), (2, 0, 0, 5), (0, 1, 1, 0), (3, 6, 1, 2)])
def test_two_by_two_determinant(a, b, c, d):
    assert macaulay_resultant([linear([a, b]), linear([c, d])]) == a * d - b * c


def test_fermat_surface_partials():
    grads = [derive(fermat_form(4, 3), i) for i in range(4)]
    assert grads[0] == parse_form("3*x0^2", 4, ZZ)
    assert macaulay_resultant(grads) == 3**32


def test_common_zero_gives_zero():
    # all partials of a cone vanish at [0:0:0:1]
    f = parse_form("x0^3 + x1^3 + x2^3", 4, ZZ)
    assert macaulay_resultant([derive(f, i) for i in range(4)]) == 0


def test_rejects_mixed_degrees():
    with pytest.raises(ResultantError):
        macaulay_resultant([variable(0, 2), variable(1, 2) * variable(1, 2)])
    with pytest.raises(ResultantError):
        macaulay_resultant([variable(0, 3), variable(1, 3)])


def test_layout_size():
    # critical degree t = N(e-1)+1, matrix is square of size C(t+N-1, N-1)
    lay = macaulay_layout(3, 2)
    assert lay.size == num_monomials(3, 4)


def random_forms(rng, N, e, bound=3):
    return [from_dense(N, e, ZZ, [rng.randint(-bound, bound) for _ in range(num_monomials(N, e))])
            for _ in range(N)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_linear_forms_match_determinant(seed, N):
    rng = random.Random(seed)
    rows = [[rng.randint(-9, 9) for _ in range(N)] for _ in range(N)]
    assert macaulay_resultant([linear(r) for r in rows], seed=seed) == determinant(rows)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_seed_independence_and_reduction(seed):
    rng = random.Random(seed)
    forms = random_forms(rng, 3, 2)
    r = macaulay_resultant(forms, seed=0)
    assert macaulay_resultant(forms, seed=seed) == r
    p = 1_000_003
    assert resultant_mod_p(forms, p, random.Random(seed)) == r % p


@pytest.mark.parametrize("seed", range(6))
def test_vanishing_matches_common_zero_search(seed):
    # forms through a rational point against random forms: res = 0 iff a common zero shows up
    rng = random.Random(seed)
    F = build_extension(5, 1)
    N, e = 3, 2
    forms = random_forms(rng, N, e)
    if seed % 2 == 0:
        point = (1, rng.randint(-2, 2), rng.randint(-2, 2))
        fixed = []
        for g in forms:
            val = sum(c * point[0] ** m[0] * point[1] ** m[1] * point[2] ** m[2] for m, c in g.coeffs.items())
            # subtract val * x0^2 so that g(point) = 0 (point[0] = 1)
            fixed.append(g - HomogeneousForm(N, e, ZZ, {(2, 0, 0): val}))
        forms = fixed
    res = macaulay_resultant(forms, seed=seed)
    zero = first_common_zero([reduce_mod(g, F) for g in forms], F, 10**6)
    if seed % 2 == 0:
        assert res == 0 and zero is not None
    elif zero is not None:
        # a rational common zero mod 5 forces res = 0 mod 5; the converse needs extensions
        assert res % 5 == 0
