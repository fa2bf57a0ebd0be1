import random

import pytest
from hypothesis import given, settings, strategies as st

from discdet.algebra import (QQ, ZZ, AlgebraError, FieldSpec, LiftRing, build_extension, crt_reconstruct,
                             embed_subfield, field_sqrt_char2, field_trace, is_prime, is_square,
                             parse_ring, prime_stream)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 5), (5, 2)]


def test_build_extension_examples():
    F = build_extension(3, 1)
    assert F.q == 3 and F.modulus == (0, 1)
    assert build_extension(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert build_extension(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1


def test_build_extension_rejects_composite():
    with pytest.raises(AlgebraError):
        build_extension(4, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(AlgebraError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_is_square_examples():
    F7 = build_extension(7, 1)
    assert is_square(1, F7)
    assert is_square(2, F7)
    assert not is_square(3, F7)
    with pytest.raises(AlgebraError):
        is_square(0, F7)
    with pytest.raises(AlgebraError):
        is_square(1, build_extension(2, 1))


def test_field_trace_examples():
    F4 = build_extension(2, 2)
    assert field_trace(0, F4) == 0
    assert field_trace(1, F4) == 0
    assert field_trace(2, F4) == 1  # the class of x


def test_crt_examples():
    assert crt_reconstruct([(1, 3), (1, 5)], 7) == 1
    assert crt_reconstruct([(2, 3), (3, 5)], 7) == -7
    assert crt_reconstruct([(0, 3), (0, 5)], 7) == 0
    with pytest.raises(AlgebraError):
        crt_reconstruct([(1, 3), (1, 5)], 8)
    with pytest.raises(AlgebraError):
        crt_reconstruct([(1, 3), (1, 3)], 1)


def test_prime_stream_descends_through_primes():
    ps = []
    for p in prime_stream():
        ps.append(p)
        if len(ps) == 5:
            break
    assert ps[0] == 2**31 - 1
    assert all(is_prime(p) for p in ps) and ps == sorted(ps, reverse=True)


def test_parse_ring():
    assert parse_ring("Z") == ZZ and parse_ring("Q") == QQ
    assert parse_ring("fp:7").q == 7 and parse_ring("fq:2:3").q == 8
    with pytest.raises(AlgebraError):
        parse_ring("fp:9")
    with pytest.raises(AlgebraError):
        parse_ring("R")


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_and_tables(p, k):
    F = build_extension(p, k)
    rng = random.Random(p * 100 + k)
    log, exp = F.log_exp_tables()
    for a in range(1, F.q):
        assert exp[log[a]] == a
        assert F.mul(a, F.inv(a)) == 1
    for _ in range(50):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.sub(F.add(a, b), b) == a
        # Frobenius is additive
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@pytest.mark.parametrize("p,k", [(p, k) for p, k in FIELDS if p > 2])
def test_square_character_is_multiplicative(p, k):
    F = build_extension(p, k)
    rng = random.Random(k)
    for _ in range(50):
        a, b = rng.randrange(1, F.q), rng.randrange(1, F.q)
        assert is_square(F.mul(a, b), F) == (is_square(a, F) == is_square(b, F))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_trace_linear_and_onto(k):
    F = build_extension(2, k)
    values = {field_trace(a, F) for a in range(F.q)}
    assert values == {0, 1}
    rng = random.Random(k)
    for _ in range(30):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert field_trace(F.add(a, b), F) == field_trace(a, F) ^ field_trace(b, F)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_char2_square_root(k):
    F = build_extension(2, k)
    for a in range(F.q):
        r = field_sqrt_char2(a, F)
        assert F.mul(r, r) == a


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lift_ring(k):
    F = build_extension(2, k)
    W = LiftRing(F)
    rng = random.Random(k)
    for a in range(F.q):
        assert W.reduce(W.lift(a)) == a
        noisy = W.add(W.lift(a), W.mul(W.from_int(2), W.element([rng.randrange(8) for _ in range(k)])))
        assert W.reduce(noisy) == a
        if a:
            assert W.mul(noisy, W.inv(noisy)) == W.one


def test_lift_ring_rejects_odd_characteristic():
    with pytest.raises(AlgebraError):
        LiftRing(build_extension(3, 1))


def test_embed_subfield_is_a_ring_map():
    small, big = build_extension(2, 2), build_extension(2, 4)
    img = embed_subfield(small, big)
    for a in range(small.q):
        for b in range(small.q):
            assert img[small.add(a, b)] == big.add(img[a], img[b])
            assert img[small.mul(a, b)] == big.mul(img[a], img[b])


@settings(max_examples=60, deadline=None)
@given(st.integers(-10**40, 10**40))
def test_crt_roundtrip(x):
    primes = []
    for p in prime_stream():
        primes.append(p)
        if len(primes) == 5:
            break
    bound = 10**40
    assert crt_reconstruct([(x % p, p) for p in primes], bound) == x
