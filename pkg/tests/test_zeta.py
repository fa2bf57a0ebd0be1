import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from discdet.algebra import build_extension, embed_subfield
from discdet.corpus import random_smooth_form, squarefree_binary_form
from discdet.discriminant import DiscriminantError
from discdet.enumeration import BudgetExceeded, extension_of
from discdet.forms import HomogeneousForm, evaluate_at, fermat_form, parse_form
from discdet.zeta import (TraceInconsistency, UnsupportedCase, charpoly_from_traces, count_points,
                          cyclotomic, cyclotomic_factorisation, det_from_charpoly,
                          det_frobenius_even_surface, frobenius_sign_binary, functional_equation_candidates,
                          minus_one_multiplicity, orbit_counts, power_sums_from_elementary,
                          primitive_betti, primitive_traces, root_counts_binary,
                          verify_determinant_theorem, zeta_report)

DATA = Path(__file__).parent / "data"
F2, F3, F4, F5 = (build_extension(p, k) for p, k in [(2, 1), (3, 1), (2, 2), (5, 1)])


def poly_from_roots(roots):
    """Coefficients low to high of prod (T - r)."""
    c = [1]
    for r in roots:
        c = [(c[i - 1] if i else 0) - r * (c[i] if i < len(c) else 0) for i in range(len(c) + 1)]
    return c


def test_count_examples():
    assert count_points(parse_form("x0*x1", 2, F5)) == 2
    assert count_points(parse_form("x0*x1 + x2*x3", 4, F3)) == 16


def test_fermat_counts_match_frozen_fixture():
    fx = json.loads((DATA / "fermat_cubic_surface_f2.json").read_text())
    f = parse_form(fx["form"], 4, F2)
    assert [count_points(f, i) for i in range(1, 7)] == fx["counts"]


def test_count_budget():
    with pytest.raises(BudgetExceeded):
        count_points(fermat_form(4, 3, F2), 6, budget=1000)


def test_count_workers_deterministic():
    f = fermat_form(4, 3, F2)
    assert count_points(f, 4, workers=1) == count_points(f, 4, workers=3)


def test_primitive_betti():
    assert primitive_betti(2, 3) == 6 and primitive_betti(2, 2) == 1 and primitive_betti(0, 5) == 4


def test_trace_examples():
    assert primitive_traces([16], 2, 2, 3) == [1]
    f = parse_form("x0^2 + x1^2 + x2^2 + 2*x3^2", 4, F3)
    N = count_points(f)
    assert N == 10 and primitive_traces([N], 2, 2, 3) == [-1]
    with pytest.raises(TraceInconsistency):
        primitive_traces([15], 2, 2, 3)


def test_charpoly_examples():
    assert charpoly_from_traces([6] * 6, 6) == poly_from_roots([1] * 6)
    assert charpoly_from_traces([-1], 1) == [1, 1]
    assert charpoly_from_traces([4, 6, 4, 6, 4, 6], 6) == poly_from_roots([1, 1, 1, 1, 1, -1])
    with pytest.raises(TraceInconsistency):
        charpoly_from_traces([1, 0], 2)  # e_2 = 1/2


def test_det_and_minus_one_multiplicity():
    chi = poly_from_roots([1, 1, 1, 1, 1, -1])
    assert det_from_charpoly(chi) == -1 and minus_one_multiplicity(chi) == 1
    assert cyclotomic_factorisation(chi) == {1: 5, 2: 1}
    assert cyclotomic(3) == [1, 1, 1]


def test_functional_equation_recovers_fermat():
    fx = json.loads((DATA / "fermat_cubic_surface_f2.json").read_text())
    traces = primitive_traces(fx["counts"], 2, 3, 2)
    full = charpoly_from_traces(traces, 6)
    assert full in functional_equation_candidates(traces[:3], 6)
    assert det_from_charpoly(full) == -1


def test_det_examples():
    assert det_frobenius_even_surface(parse_form("x0*x1 + x2*x3", 4, F3)) == 1
    assert det_frobenius_even_surface(parse_form("x0^2 + x1^2 + x2^2 + 2*x3^2", 4, F3)) == -1
    assert det_frobenius_even_surface(fermat_form(4, 3, F2)) == -1
    assert det_frobenius_even_surface(fermat_form(4, 3, F4)) == 1


def test_descent_matches_direct_counts():
    rep = zeta_report(fermat_form(4, 3, F4))
    assert rep.method.startswith("descent")
    f4 = fermat_form(4, 3, F4)
    assert [count_points(f4, i) for i in (1, 2)] == rep.counts[:2]


def test_zeta_rejects():
    with pytest.raises(UnsupportedCase):
        zeta_report(fermat_form(4, 4, F5))
    with pytest.raises(DiscriminantError):
        zeta_report(fermat_form(4, 3, F3))  # singular in characteristic 3


def test_frobenius_sign_examples():
    assert frobenius_sign_binary(parse_form("x0^2 + x0*x1 + x1^2", 2, F2)) == -1
    assert frobenius_sign_binary(parse_form("x0^2*x1 + x0*x1^2", 2, F2)) == 1
    # t^3 + t + 1 has no root in F_5
    f = parse_form("x0^3 + x0*x1^2 + x1^3", 2, F5)
    assert root_counts_binary(f, 3) == [0, 0, 3] and orbit_counts([0, 0, 3]) == [0, 0, 1]
    assert frobenius_sign_binary(f) == 1
    with pytest.raises(DiscriminantError):
        frobenius_sign_binary(parse_form("x0^2*x1", 2, F5))


def test_verify_examples():
    v = verify_determinant_theorem(parse_form("x0^2 + x0*x1 + x1^2", 2, F2))
    assert (v.lhs, v.rhs, v.agree) == (-1, -1, True) and v.character.trace_bit == 1
    v = verify_determinant_theorem(parse_form("x0*x1 + x2*x3", 4, F3))
    assert (v.lhs, v.rhs, v.agree) == (1, 1, True)
    v = verify_determinant_theorem(fermat_form(4, 3, F4))
    assert (v.lhs, v.rhs, v.agree) == (1, 1, True) and v.character.trace_bit == 0
    v = verify_determinant_theorem(fermat_form(4, 3, F2))
    assert (v.lhs, v.rhs, v.agree) == (-1, -1, True)


def test_verify_unsupported():
    with pytest.raises(UnsupportedCase):
        verify_determinant_theorem(fermat_form(4, 3, build_extension(7, 1)))
    with pytest.raises(DiscriminantError):
        verify_determinant_theorem(fermat_form(3, 3, F2))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([(1, 1), (1, 2), (2, 3), (1, 3), (2, 4), (1, 4), (1, 6), (5, 6)]),
                min_size=1, max_size=6))
def test_newton_roundtrip(angles):
    # multisets of roots of unity, given as (k, m) for exp(2 pi i k/m); pair with conjugates to stay real
    roots = []
    for k, m in angles:
        if len(roots) + (1 if m <= 2 else 2) > 6:
            break
        roots.append((k, m))
        if m > 2:
            roots.append((m - k, m))
    b = len(roots)
    chi = [1]
    i = 0
    while i < len(roots):
        k, m = roots[i]
        if m == 1:
            factor, i = [-1, 1], i + 1
        elif m == 2:
            factor, i = [1, 1], i + 1
        else:
            # (T - z)(T - conj z) = T^2 - 2 cos(2 pi k/m) T + 1 with integer trace for m in {3, 4, 6}
            trace = {3: -1, 4: 0, 6: 1}[m]
            factor, i = [1, -trace, 1], i + 2
        chi = [sum(chi[a] * factor[j - a] for a in range(len(chi)) if 0 <= j - a < len(factor))
               for j in range(len(chi) + len(factor) - 1)]
    e = [(-1) ** j * chi[b - j] for j in range(b + 1)]
    power = power_sums_from_elementary(e, b)
    assert charpoly_from_traces(power, b) == chi
    assert det_from_charpoly(chi) == (-1) ** minus_one_multiplicity(chi)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F3, F4, F5, build_extension(7, 1)]), st.integers(2, 5))
def test_root_counts_brute_force(seed, F, d):
    f = squarefree_binary_form(random.Random(seed), F, d)
    got = root_counts_binary(f, 2)
    for i in (1, 2):
        E = extension_of(F, i)
        g = HomogeneousForm(2, d, E, {m: _embed(c, F, E) for m, c in f.coeffs.items()})
        pts = [(1, t) for t in range(E.q)] + [(0, 1)]
        assert got[i - 1] == sum(evaluate_at(g, p) == 0 for p in pts)
        assert got[0] <= got[i - 1]


def _embed(c, F, E):
    return embed_subfield(F, E)[c] if E.q != F.q else c


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_cubic_surface_traces_bounded(seed):
    f = random_smooth_form(random.Random(seed), F2, 4, 3)
    rep = zeta_report(f)
    assert all(abs(t) <= rep.b_prim for t in rep.traces)
    assert rep.det_frob in (1, -1)
