"""Sparse homogeneous forms over Z, Q and finite fields.

A form stores a dict ``{exponent tuple: nonzero coefficient}``.  Monomials are
ordered graded-lexicographically (``x0^d`` first); that order fixes both the
canonical text serialisation and the row/column order of Macaulay matrices.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping, Sequence

from .algebra import QQ, ZZ, AlgebraError, FieldSpec

Monomial = tuple[int, ...]


class FormError(ValueError):
    """Malformed or inconsistent polynomial input."""


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, in descending grlex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def num_monomials(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1)


@dataclass(frozen=True)
class HomogeneousForm:
    nvars: int
    degree: int
    ring: object
    coeffs: Mapping[Monomial, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.nvars < 1 or self.degree < 0:
            raise FormError("need nvars >= 1 and degree >= 0")
        clean = {}
        for mono, c in self.coeffs.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.nvars or sum(mono) != self.degree or min(mono) < 0:
                raise FormError(f"monomial {mono} does not fit {self.nvars} vars, degree {self.degree}")
            if not self.ring.is_zero(c):
                clean[mono] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, mono: Monomial):
        return self.coeffs.get(tuple(mono), self.ring.zero)

    def terms(self) -> Iterator[tuple[Monomial, object]]:
        """Nonzero terms in descending grlex order."""
        for mono in sorted(self.coeffs, key=_grlex_key, reverse=True):
            yield mono, self.coeffs[mono]

    def __str__(self):
        return format_form(self)

    # arithmetic
    def __add__(self, other: HomogeneousForm) -> HomogeneousForm:
        _check_compatible(self, other)
        R = self.ring
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = R.add(out.get(mono, R.zero), c)
        return HomogeneousForm(self.nvars, self.degree, R, out)

    def __neg__(self) -> HomogeneousForm:
        R = self.ring
        return HomogeneousForm(self.nvars, self.degree, R, {m: R.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other: HomogeneousForm) -> HomogeneousForm:
        return self + (-other)

    def scale(self, lam) -> HomogeneousForm:
        R = self.ring
        return HomogeneousForm(self.nvars, self.degree, R, {m: R.mul(lam, c) for m, c in self.coeffs.items()})

    def __mul__(self, other: HomogeneousForm) -> HomogeneousForm:
        if self.nvars != other.nvars or self.ring != other.ring:
            raise FormError("cannot multiply forms over different spaces")
        R = self.ring
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = R.add(out.get(m, R.zero), R.mul(c1, c2))
        return HomogeneousForm(self.nvars, self.degree + other.degree, R, out)

    def change_ring(self, ring, convert=None) -> HomogeneousForm:
        convert = convert or ring.from_int
        return HomogeneousForm(self.nvars, self.degree, ring, {m: convert(c) for m, c in self.coeffs.items()})


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


def _check_compatible(f: HomogeneousForm, g: HomogeneousForm):
    if f.nvars != g.nvars or f.degree != g.degree or f.ring != g.ring:
        raise FormError("forms live in different spaces")


def zero_form(nvars: int, degree: int, ring=ZZ) -> HomogeneousForm:
    return HomogeneousForm(nvars, degree, ring, {})


def variable(i: int, nvars: int, ring=ZZ) -> HomogeneousForm:
    mono = tuple(1 if j == i else 0 for j in range(nvars))
    return HomogeneousForm(nvars, 1, ring, {mono: ring.one})


def power(f: HomogeneousForm, e: int) -> HomogeneousForm:
    out = HomogeneousForm(f.nvars, 0, f.ring, {(0,) * f.nvars: f.ring.one})
    for _ in range(e):
        out = out * f
    return out


def from_dense(nvars: int, degree: int, ring, values: Sequence) -> HomogeneousForm:
    """Form whose coefficients, in descending grlex order, are ``values``."""
    monos = monomials(nvars, degree)
    if len(values) != len(monos):
        raise FormError(f"expected {len(monos)} coefficients, got {len(values)}")
    return HomogeneousForm(nvars, degree, ring, dict(zip(monos, values)))


# ---------------------------------------------------------------------------
# calculus and substitution


def derive(f: HomogeneousForm, i: int) -> HomogeneousForm:
    """Partial derivative with respect to ``x_i``."""
    if not 0 <= i < f.nvars:
        raise FormError(f"variable index {i} out of range for {f.nvars} variables")
    if f.degree == 0:
        raise FormError("cannot differentiate a constant form")
    R = f.ring
    out = {}
    for mono, c in f.coeffs.items():
        e = mono[i]
        if e:
            m = mono[:i] + (e - 1,) + mono[i + 1 :]
            out[m] = R.mul(R.from_int(e), c)
    return HomogeneousForm(f.nvars, f.degree - 1, R, out)


def gradient(f: HomogeneousForm) -> list[HomogeneousForm]:
    return [derive(f, i) for i in range(f.nvars)]


def evaluate_at(f: HomogeneousForm, point: Sequence):
    if len(point) != f.nvars:
        raise FormError(f"point has {len(point)} coordinates, form has {f.nvars} variables")
    R = f.ring
    acc = R.zero
    for mono, c in f.coeffs.items():
        term = c
        for x, e in zip(point, mono):
            for _ in range(e):
                term = R.mul(term, x)
        acc = R.add(acc, term)
    return acc


def act_linear(f: HomogeneousForm, A: Sequence[Sequence]) -> HomogeneousForm:
    """The form ``x -> f(A x)``; ``A`` is a square matrix of ring elements."""
    N = f.nvars
    if len(A) != N or any(len(row) != N for row in A):
        raise FormError(f"matrix must be {N}x{N}")
    R = f.ring
    # (A x)_j as linear forms
    linears = [HomogeneousForm(N, 1, R, {tuple(1 if t == i else 0 for t in range(N)): A[j][i] for i in range(N)})
               for j in range(N)]
    one = HomogeneousForm(N, 0, R, {(0,) * N: R.one})
    cache: dict[tuple[int, int], HomogeneousForm] = {}

    def lin_pow(j, e):
        key = (j, e)
        if key not in cache:
            cache[key] = one if e == 0 else lin_pow(j, e - 1) * linears[j]
        return cache[key]

    out = zero_form(N, f.degree, R)
    for mono, c in f.coeffs.items():
        term = one
        for j, e in enumerate(mono):
            if e:
                term = term * lin_pow(j, e)
        out = out + term.scale(c)
    return out


def reduce_mod(f: HomogeneousForm, F: FieldSpec) -> HomogeneousForm:
    """Image of an integral form in ``F`` (prime subfield)."""
    if f.ring == QQ:
        conv = lambda c: F.mul(F.from_int(c.numerator), F.inv(F.from_int(c.denominator)))  # noqa: E731
    else:
        conv = F.from_int
    return f.change_ring(F, conv)


def lift_to_integers(f: HomogeneousForm) -> HomogeneousForm:
    """Integer lift of a prime-field form with representatives in ``[0, p)``."""
    F = f.ring
    if not isinstance(F, FieldSpec) or F.k != 1:
        raise FormError("lift_to_integers expects a prime-field form")
    return f.change_ring(ZZ, int)


def clear_denominators(f: HomogeneousForm) -> tuple[HomogeneousForm, int]:
    """``(g, L)`` with ``g = L f`` integral."""
    from math import lcm

    L = 1
    for c in f.coeffs.values():
        L = lcm(L, Fraction(c).denominator)
    g = HomogeneousForm(f.nvars, f.degree, ZZ, {m: int(Fraction(c) * L) for m, c in f.coeffs.items()})
    return g, L


# ---------------------------------------------------------------------------
# Sylvester pentahedral cubic


@dataclass(frozen=True)
class SylvesterCoefficients:
    a: object
    b: object
    c: object
    d: object
    e: object

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e)


def sylvester_form(s: SylvesterCoefficients, ring=ZZ) -> HomogeneousForm:
    """a x^3 + b y^3 + c z^3 + d u^3 - e (x + y + z + u)^3 in variables x0..x3."""
    a, b, c, d, e = s.as_tuple()
    out = zero_form(4, 3, ring)
    for i, coef in enumerate((a, b, c, d)):
        out = out + power(variable(i, 4, ring), 3).scale(coef)
    total = variable(0, 4, ring) + variable(1, 4, ring) + variable(2, 4, ring) + variable(3, 4, ring)
    return out - power(total, 3).scale(e)


def fermat_form(nvars: int, degree: int, ring=ZZ) -> HomogeneousForm:
    return HomogeneousForm(nvars, degree, ring,
                           {tuple(degree if j == i else 0 for j in range(nvars)): ring.one for i in range(nvars)})


# ---------------------------------------------------------------------------
# text grammar

_TERM_SPLIT = re.compile(r"([+-])")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_COEFF = re.compile(r"^(\d+)(?:/(\d+))?$")


def _parse_coeff(text: str, ring):
    m = _COEFF.match(text)
    if not m:
        raise FormError(f"bad coefficient {text!r}")
    num = int(m.group(1))
    if m.group(2) is not None:
        if ring != QQ:
            raise FormError(f"rational coefficient {text!r} needs ring Q")
        den = int(m.group(2))
        if den == 0:
            raise FormError("zero denominator")
        return Fraction(num, den)
    if isinstance(ring, FieldSpec):
        if ring.k == 1:
            return num % ring.p
        if num >= ring.q:
            raise FormError(f"coefficient {num} is not an encoding of an element of {ring!r}")
        return num
    return ring.from_int(num)


def parse_form(text: str, nvars: int, ring=ZZ) -> HomogeneousForm:
    """Parse ``c*x0^a*x1^b + ...``; every term must have the same degree."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise FormError("empty polynomial")
    tokens = _TERM_SPLIT.split(s)
    # tokens alternate: [first-term, sign, term, sign, term, ...]
    signed_terms = []
    sign = "+"
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    if len(tokens) % 2:
        raise FormError(f"syntax error in {text!r}")
    for sign, term in zip(tokens[0::2], tokens[1::2]):
        if not term:
            raise FormError(f"syntax error near {sign!r} in {text!r}")
        signed_terms.append((sign, term))

    parsed = []
    for sign, term in signed_terms:
        parts = term.split("*")
        coeff = ring.one
        start = 0
        if _COEFF.match(parts[0]):
            coeff = _parse_coeff(parts[0], ring)
            start = 1
        mono = [0] * nvars
        if start == len(parts):
            raise FormError(f"term {term!r} has no variables")
        for factor in parts[start:]:
            m = _FACTOR.match(factor)
            if not m:
                raise FormError(f"bad factor {factor!r} in term {term!r}")
            idx = int(m.group(1))
            if idx >= nvars:
                raise FormError(f"variable x{idx} out of range for {nvars} variables")
            mono[idx] += int(m.group(2)) if m.group(2) is not None else 1
        if sign == "-":
            coeff = ring.neg(coeff)
        parsed.append((tuple(mono), coeff, term))

    degrees = {sum(m) for m, _, _ in parsed}
    if len(degrees) > 1:
        detail = ", ".join(f"{t} (degree {sum(m)})" for m, _, t in parsed)
        raise FormError(f"mixed degrees: {detail}")
    degree = degrees.pop()
    out: dict = {}
    for mono, c, _ in parsed:
        out[mono] = ring.add(out.get(mono, ring.zero), c)
    return HomogeneousForm(nvars, degree, ring, out)


def _format_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_form(f: HomogeneousForm) -> str:
    """Canonical text (descending grlex); ``parse_form`` inverts it."""
    if f.is_zero:
        # degree is kept by writing a cancelling pair
        mono = _format_monomial((f.degree,) + (0,) * (f.nvars - 1)) if f.degree else ""
        return f"{mono} - {mono}" if mono else "0"
    pieces = []
    signed = not isinstance(f.ring, FieldSpec)
    for mono, c in f.terms():
        neg = signed and c < 0
        mag = -c if neg else c
        body = _format_monomial(mono)
        if mag != 1 and body:
            body = f"{_fmt_coeff(mag)}*{body}"
        elif not body:
            body = _fmt_coeff(mag)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"{'-' if neg else '+'} {body}")
    return " ".join(pieces)


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def all_forms_count(nvars: int, degree: int) -> int:
    return num_monomials(nvars, degree)


def coefficient_vector(f: HomogeneousForm) -> list:
    return [f[m] for m in monomials(f.nvars, f.degree)]


def iter_points_projective(F: FieldSpec, nvars: int) -> Iterator[tuple[int, ...]]:
    """Representatives of P^{nvars-1}(F) with first nonzero coordinate equal to 1."""
    for lead in range(nvars):
        for rest in itertools.product(range(F.q), repeat=nvars - lead - 1):
            yield (0,) * lead + (1,) + rest


__all__ = [
    "AlgebraError", "FormError", "HomogeneousForm", "SylvesterCoefficients", "act_linear",
    "clear_denominators", "derive", "evaluate_at", "fermat_form", "format_form", "from_dense",
    "gradient", "iter_points_projective", "lift_to_integers", "monomials", "parse_form",
    "power", "reduce_mod", "sylvester_form", "variable", "zero_form",
]
