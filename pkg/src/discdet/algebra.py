"""Exact arithmetic: integers, rationals, prime and extension fields, mod-8 lifts, CRT.

Elements of ``F_{p^k}`` are encoded as Python ints ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_0 + c_1 x + ...`` is the residue modulo the field's defining polynomial.
Prime-field elements are therefore just their residues in ``[0, p)``, and the prime
subfield of any extension is the set of encodings below ``p``.

All ring objects expose the same small interface (``zero``, ``one``, ``add``, ``sub``,
``neg``, ``mul``, ``from_int``, ``is_zero``) so that forms can be generic over them.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import numpy as np


class AlgebraError(ValueError):
    """Rejected input to an arithmetic routine."""


def is_prime(p: int) -> bool:
    return p > 1 and bool(gmpy2.is_prime(p))


# ---------------------------------------------------------------------------
# characteristic zero rings


class IntegerRing:
    name = "Z"
    zero = 0
    one = 1
    characteristic = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, c: int):
        return int(c)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class RationalField(IntegerRing):
    name = "Q"

    def from_int(self, c: int):
        return Fraction(c)

    def is_unit(self, a) -> bool:
        return a != 0

    def div(self, a, b):
        return Fraction(a) / Fraction(b)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


ZZ = IntegerRing()
QQ = RationalField()


# ---------------------------------------------------------------------------
# polynomials over F_p as coefficient lists (low degree first, no trailing zeros)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def poly_mul_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_gcd_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, poly_mod_p(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def poly_powmod_p(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod_p(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod_p(poly_mul_p(result, base, p), mod, p)
        base = poly_mod_p(poly_mul_p(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible_p(h: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p (Ben-Or style gcd test)."""
    k = len(h) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(k // 2):
        xp = poly_powmod_p(xp, p, h, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(poly_gcd_p(h, _trim(diff), p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# finite fields


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^k} = F_p[x]/(modulus), modulus monic, low degree first."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise AlgebraError(f"{self.p} is not prime")
        if self.k < 1 or len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise AlgebraError("modulus must be monic of degree k")
        if not is_irreducible_p(self.modulus, self.p):
            raise AlgebraError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"fp:{self.p}" if self.k == 1 else f"fq:{self.p}:{self.k}"

    zero = 0
    one = 1

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # encoding helpers
    def to_poly(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_poly(self, coeffs: Iterable[int]) -> int:
        coeffs = poly_mod_p(list(coeffs), self.modulus, self.p)
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + c
        return out

    def from_int(self, c: int) -> int:
        return int(c) % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a != 0

    def elements(self) -> range:
        return range(self.q)

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, -1)

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + sign * y) % p) * scale
            scale *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        tabs = self._tables
        if tabs is not None:
            log, exp = tabs
            return int(exp[(int(log[a]) + int(log[b])) % (self.q - 1)])
        return self.from_poly(poly_mul_p(self.to_poly(a), self.to_poly(b), self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # lookup tables for vectorised evaluation (q <= 2^22)
    @functools.cached_property
    def _tables(self):
        if self.q > 1 << 22:
            return None
        return _log_exp_tables(self)

    def log_exp_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """``(log, exp)``: ``exp[log[a]] == a`` for ``a != 0``; ``log[0] == -1``."""
        tabs = self._tables
        if tabs is None:
            raise AlgebraError(f"{self!r} too large for lookup tables")
        return tabs

    def primitive_element(self) -> int:
        _, exp = self.log_exp_tables()
        return int(exp[1]) if self.q > 2 else 1

    @functools.cached_property
    def _add_table(self):
        if self.p == 2 or self.k == 1 or self.q > 1 << 11:
            return None
        a = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q * self.q, dtype=np.int64)
        scale, aa = 1, a.copy()
        digits = []
        for _ in range(self.k):
            digits.append(aa % self.p)
            aa //= self.p
        for j, dj in enumerate(digits):
            out += (((dj[:, None] + dj[None, :]) % self.p) * self.p**j).reshape(-1)
        return out

    def vec_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a + b) % self.p
        table = self._add_table
        if table is not None:
            return table[a * self.q + b]
        out = np.zeros_like(a)
        scale = 1
        aa, bb = a.copy(), b.copy()
        for _ in range(self.k):
            out += ((aa % self.p + bb % self.p) % self.p) * scale
            aa //= self.p
            bb //= self.p
            scale *= self.p
        return out


def _log_exp_tables(F: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    q = F.q
    log = np.full(q, -1, dtype=np.int64)
    exp = np.zeros(max(q - 1, 1), dtype=np.int64)
    if q == 2:
        log[1] = 0
        exp[0] = 1
        return log, exp
    order = q - 1
    prime_factors = [int(r) for r in _prime_factors(order)]
    for g in range(2, q) if F.k == 1 else range(F.p, q):
        if all(_slow_pow(F, g, order // r) != 1 for r in prime_factors):
            break
    else:  # pragma: no cover - every finite field has a generator
        raise AlgebraError("no primitive element found")
    x = 1
    for i in range(order):
        exp[i] = x
        log[x] = i
        x = _slow_mul(F, x, g)
    return log, exp


def _slow_mul(F: FieldSpec, a: int, b: int) -> int:
    if F.k == 1:
        return a * b % F.p
    return F.from_poly(poly_mul_p(F.to_poly(a), F.to_poly(b), F.p))


def _slow_pow(F: FieldSpec, a: int, e: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = _slow_mul(F, result, a)
        a = _slow_mul(F, a, a)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def build_extension(p: int, k: int) -> FieldSpec:
    """F_{p^k} with the lexicographically least monic irreducible modulus.

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are ordered by
    ``(c_{k-1}, ..., c_0)``; for ``k = 1`` the modulus is ``x``.
    """
    if not is_prime(p):
        raise AlgebraError(f"{p} is not prime")
    if k < 1:
        raise AlgebraError("extension degree must be >= 1")
    for m in range(p**k):
        low = []
        for _ in range(k):
            m, r = divmod(m, p)
            low.append(r)
        h = tuple(low) + (1,)
        if is_irreducible_p(h, p):
            return FieldSpec(p, k, h)
    raise AlgebraError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


def embed_subfield(small: FieldSpec, big: FieldSpec) -> list[int]:
    """Images in ``big`` of all elements of ``small`` under some fixed embedding.

    Returns a list ``img`` with ``img[a]`` the image of the encoding ``a``.
    """
    if small.p != big.p or big.k % small.k:
        raise AlgebraError(f"{small!r} does not embed in {big!r}")
    if small.k == 1:
        return list(range(small.p))
    h = small.modulus
    root = None
    for z in range(big.q):
        acc = 0
        for c in reversed(h):
            acc = big.add(big.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    if root is None:  # pragma: no cover
        raise AlgebraError("no root of the subfield modulus found")
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))
    img = []
    for a in range(small.q):
        acc = 0
        for c, pw in zip(small.to_poly(a), powers):
            acc = big.add(acc, big.mul(c, pw))
        img.append(acc)
    return img


def is_square(a: int, F: FieldSpec) -> bool:
    """Quadratic residuosity of a nonzero element of an odd-characteristic field."""
    if F.p == 2:
        raise AlgebraError("is_square is for odd characteristic; use char2")
    if a == 0:
        raise AlgebraError("quadratic character undefined at zero")
    return F.pow(a, (F.q - 1) // 2) == 1


def field_trace(a: int, F: FieldSpec) -> int:
    """Absolute trace a + a^2 + a^4 + ... of an element of F_{2^k}."""
    if F.p != 2:
        raise AlgebraError("field_trace is defined here for characteristic 2")
    acc, x = 0, a
    for _ in range(F.k):
        acc ^= x
        x = F.mul(x, x)
    if acc not in (0, 1):  # pragma: no cover - trace lands in F_2
        raise AssertionError("trace left the prime field")
    return acc


def field_sqrt_char2(a: int, F: FieldSpec) -> int:
    """The unique square root in F_{2^k}: a^(2^(k-1))."""
    x = a
    for _ in range(F.k - 1):
        x = F.mul(x, x)
    return x


# ---------------------------------------------------------------------------
# mod-8 unramified lift of F_{2^k}


class LiftRing:
    """(Z/8)[x]/(h~) with h~ the 0/1 lift of the modulus of a field F_{2^k}.

    Elements are tuples of ``k`` residues in ``[0, 8)``.
    """

    modulus_power = 8

    def __init__(self, base: FieldSpec):
        if base.p != 2:
            raise AlgebraError("LiftRing lifts characteristic-2 fields")
        self.base = base
        self.k = base.k
        self.h = tuple(base.modulus)
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def __repr__(self):
        return f"LiftRing(GF(2^{self.k}), mod 8)"

    def __eq__(self, other):
        return isinstance(other, LiftRing) and other.base == self.base

    def __hash__(self):
        return hash(("LiftRing", self.base))

    def _reduce(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        c = [x % 8 for x in coeffs]
        k = self.k
        for top in range(len(c) - 1, k - 1, -1):
            t = c[top]
            if t:
                for j in range(k + 1):
                    c[top - k + j] = (c[top - k + j] - t * self.h[j]) % 8
        c = c[:k] + [0] * max(0, k - len(c))
        return tuple(c[:k])

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return self._reduce(list(coeffs))

    def from_int(self, c: int) -> tuple[int, ...]:
        return (int(c) % 8,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % 8 for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % 8 for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % 8 for x in a)

    def mul(self, a, b):
        out = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce(out)

    def is_zero(self, a) -> bool:
        return not any(a)

    def reduce(self, a) -> int:
        """Reduction mod 2 onto the residue field (as a field encoding)."""
        return self.base.from_poly([x % 2 for x in a])

    def lift(self, a: int) -> tuple[int, ...]:
        """The lift with coefficients in {0, 1}."""
        return tuple(self.base.to_poly(a))

    def is_unit(self, a) -> bool:
        return self.reduce(a) != 0

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("element is not a unit mod 2")
        x = self.lift(self.base.inv(self.reduce(a)))
        two = self.from_int(2)
        for _ in range(2):  # Newton: precision 2 -> 4 -> 8
            x = self.mul(x, self.sub(two, self.mul(a, x)))
        return x

    def divide_by(self, a, c: int):
        """Exact division of ``a`` by the integer ``c`` (a power of two)."""
        if any(x % c for x in a):
            raise ArithmeticError(f"{a} not divisible by {c}")
        return tuple(x // c for x in a)


# ---------------------------------------------------------------------------
# Chinese remaindering


def crt_reconstruct(residues: Sequence[tuple[int, int]], bound: int) -> int:
    """Unique integer ``x`` with ``|x| <= bound`` and ``x = r_i (mod p_i)``.

    ``residues`` holds ``(r_i, p_i)`` pairs with distinct primes whose product
    exceeds ``2 * bound``.
    """
    moduli = [m for _, m in residues]
    if len(set(moduli)) != len(moduli):
        raise AlgebraError("moduli must be distinct")
    M = math.prod(moduli)
    if M <= 2 * bound:
        raise AlgebraError(f"moduli product {M} does not exceed 2*bound = {2 * bound}")
    x = 0
    for r, m in residues:
        Mi = M // m
        x = (x + r * Mi * pow(Mi, -1, m)) % M
    if x > M // 2:
        x -= M
    return x


def balanced(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def prime_stream(start: int = (1 << 31) - 1):
    """Descending primes below ``start`` (inclusive); products stay below 2^62."""
    p = start
    while p > 2:
        if gmpy2.is_prime(p):
            yield p
        p -= 1


def parse_ring(spec: str):
    """``Z``, ``Q``, ``fp:p`` or ``fq:p:k`` to a ring object."""
    s = spec.strip()
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    parts = s.split(":")
    try:
        if parts[0] == "fp" and len(parts) == 2:
            return build_extension(int(parts[1]), 1)
        if parts[0] == "fq" and len(parts) == 3:
            return build_extension(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise AlgebraError(f"bad ring {spec!r}: {exc}") from exc
    raise AlgebraError(f"unknown ring {spec!r}")


def ring_name(ring) -> str:
    return ring.name
