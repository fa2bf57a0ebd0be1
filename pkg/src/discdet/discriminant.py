"""Resultant and divided discriminants of homogeneous forms, and their companions.

``disc_r(f) = res(D_0 f, ..., D_{n+1} f)`` and ``disc_d(f) = disc_r(f) / d^a(n,d)``.
Over a finite field the coefficients are lifted to Z (or to Z[y] for proper
extensions, with ``y`` standing for the generator of the field), the divided
discriminant is computed there, and the result is reduced.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import QQ, ZZ, FieldSpec, poly_mod_p
from .enumeration import DEFAULT_BUDGET, BudgetExceeded, extension_of, first_common_zero
from .forms import HomogeneousForm, SylvesterCoefficients, clear_denominators, gradient
from .resultant import macaulay_resultant


class DiscriminantError(ValueError):
    """Rejected input (bad degree, odd dimension where a sign is needed, ...)."""


class InternalError(AssertionError):
    """An identity that holds universally failed: an implementation bug."""


# ---------------------------------------------------------------------------
# numerical invariants


def a_exponent(n: int, d: int) -> int:
    """Exponent a(n, d) of the content d^a of the universal resultant-discriminant."""
    num = (d - 1) ** (n + 2) - (-1) ** (n + 2)
    if num % d:
        raise InternalError(f"a({n},{d}) not integral")
    return num // d


def disc_degree(n: int, d: int) -> int:
    """Degree m = (n+2)(d-1)^(n+1) of disc_d in the coefficients."""
    return (n + 2) * (d - 1) ** (n + 1)


def epsilon(n: int, d: int) -> int:
    if n % 2:
        raise DiscriminantError(f"epsilon(n, d) needs even n, got n={n}")
    if d < 2:
        raise DiscriminantError("degree must be at least 2")
    if d % 2:
        return (-1) ** ((d - 1) // 2)
    return (-1) ** ((d // 2) * ((n + 2) // 2))


@dataclass(frozen=True)
class DiscriminantInvariants:
    n: int
    d: int
    a: int
    m: int
    epsilon: int | None

    @classmethod
    def of(cls, n: int, d: int) -> "DiscriminantInvariants":
        _check_nd(n, d)
        return cls(n, d, a_exponent(n, d), disc_degree(n, d), epsilon(n, d) if n % 2 == 0 else None)


def _check_nd(n: int, d: int):
    if n < 0:
        raise DiscriminantError("dimension n must be >= 0")
    if d < 2:
        raise DiscriminantError("degree d must be > 1")


@dataclass(frozen=True)
class DiscriminantReport:
    invariants: DiscriminantInvariants
    ring: object
    disc_r: object
    disc_d: object
    signed: object  # epsilon * disc_d, None for odd n
    smooth: bool


# ---------------------------------------------------------------------------
# core computation over Z


def discriminants_over_integers(f: HomogeneousForm, seed: int = 0) -> tuple[int, int]:
    """``(disc_r, disc_d)`` of an integral form."""
    if f.ring != ZZ:
        raise DiscriminantError("expected a form over Z")
    n, d = f.nvars - 2, f.degree
    _check_nd(n, d)
    disc_r = macaulay_resultant(gradient(f), seed=seed)
    content = d ** a_exponent(n, d)
    q, r = divmod(disc_r, content)
    if r:
        raise InternalError(f"disc_r = {disc_r} is not divisible by d^a = {content}")
    return disc_r, q


def disc_d_integer(f: HomogeneousForm, seed: int = 0) -> int:
    return discriminants_over_integers(f, seed)[1]


def disc_d_polynomial(nvars: int, degree: int, coeff_polys: dict, seed: int = 0) -> list[int]:
    """disc_d of a form whose coefficients are integer polynomials in ``y``.

    ``coeff_polys`` maps monomials to coefficient lists (low degree first).
    Returns the coefficient list of ``y -> disc_d(f_y)`` in Z[y], found by
    evaluating at consecutive integers and interpolating exactly.
    """
    n = nvars - 2
    delta = max((len(c) - 1 for c in coeff_polys.values()), default=0)
    top = disc_degree(n, degree) * delta
    xs = [j - top // 2 for j in range(top + 1)]
    ys = []
    for y in xs:
        coeffs = {m: sum(c * y**i for i, c in enumerate(cs)) for m, cs in coeff_polys.items()}
        ys.append(disc_d_integer(HomogeneousForm(nvars, degree, ZZ, coeffs), seed))
    return _interpolate_integer(xs, ys)


def _interpolate_integer(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Newton interpolation; the interpolant must have integer coefficients."""
    k = len(xs)
    dd = [Fraction(y) for y in ys]
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)] * k
    # Horner on the Newton form
    acc = [dd[k - 1]]
    for i in range(k - 2, -1, -1):
        # acc * (y - xs[i]) + dd[i]
        nxt = [Fraction(0)] * (len(acc) + 1)
        for j, c in enumerate(acc):
            nxt[j + 1] += c
            nxt[j] -= c * xs[i]
        nxt[0] += dd[i]
        acc = nxt
    poly = acc
    out = []
    for c in poly:
        if c.denominator != 1:
            raise InternalError("interpolated discriminant polynomial is not integral")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def disc_d_over_field(f: HomogeneousForm, seed: int = 0) -> int:
    """disc_d of a form over F_q, as a field element (encoding)."""
    F = f.ring
    if not isinstance(F, FieldSpec):
        raise DiscriminantError("expected a finite-field form")
    polys = {m: F.to_poly(c) for m, c in f.coeffs.items()}
    if all(all(x == 0 for x in cs[1:]) for cs in polys.values()):
        lifted = HomogeneousForm(f.nvars, f.degree, ZZ, {m: cs[0] for m, cs in polys.items()})
        return F.from_int(disc_d_integer(lifted, seed))
    P = disc_d_polynomial(f.nvars, f.degree, polys, seed)
    return F.from_poly(poly_mod_p(P, F.modulus, F.p))


def discriminant_report(f: HomogeneousForm, n: int | None = None, d: int | None = None,
                        seed: int = 0) -> DiscriminantReport:
    """Resultant and divided discriminants of ``f``, with the signed value for even n."""
    n = f.nvars - 2 if n is None else n
    d = f.degree if d is None else d
    if f.nvars != n + 2 or f.degree != d:
        raise DiscriminantError(f"form has {f.nvars} variables and degree {f.degree}, "
                                f"expected n+2={n + 2} and d={d}")
    inv = DiscriminantInvariants.of(n, d)
    R = f.ring
    if R == ZZ:
        disc_r, disc_d = discriminants_over_integers(f, seed)
        smooth = disc_d in (1, -1)
    elif R == QQ:
        g, L = clear_denominators(f)
        r_int, d_int = discriminants_over_integers(g, seed)
        # disc(f) = disc(g / L) = L^-m disc(g)
        scale = Fraction(1, L) ** inv.m
        disc_r, disc_d = Fraction(r_int) * scale, Fraction(d_int) * scale
        smooth = disc_d != 0
    elif isinstance(R, FieldSpec):
        disc_d = disc_d_over_field(f, seed)
        disc_r = R.mul(R.pow(R.from_int(d), inv.a), disc_d)
        smooth = disc_d != 0
    else:
        raise DiscriminantError(f"unsupported ring {R!r}")
    signed = None
    if inv.epsilon is not None:
        signed = R.mul(R.from_int(inv.epsilon), disc_d) if isinstance(R, FieldSpec) else inv.epsilon * disc_d
    return DiscriminantReport(inv, R, disc_r, disc_d, signed, smooth)


def signed_discriminant(f: HomogeneousForm, seed: int = 0):
    rep = discriminant_report(f, seed=seed)
    if rep.signed is None:
        raise DiscriminantError("signed discriminant needs even n")
    return rep.signed


# ---------------------------------------------------------------------------
# closed forms used as independent oracles


def binary_disc_from_roots(pairs: Sequence[tuple], ring=ZZ):
    """prod_{i != j} (u_i v_j - u_j v_i): disc_d of prod (u_i T0 - v_i T1)."""
    if len(pairs) < 2:
        raise DiscriminantError("need at least two root pairs")
    R = ring
    acc = R.one
    for (ui, vi), (uj, vj) in itertools.permutations(pairs, 2):
        acc = R.mul(acc, R.sub(R.mul(ui, vj), R.mul(uj, vi)))
    return acc


def binary_form_from_roots(pairs: Sequence[tuple], ring=ZZ) -> HomogeneousForm:
    """prod (u_i T0 - v_i T1)."""
    R = ring
    f = HomogeneousForm(2, 0, R, {(0, 0): R.one})
    for u, v in pairs:
        f = f * HomogeneousForm(2, 1, R, {(1, 0): u, (0, 1): R.neg(v)})
    return f


@dataclass(frozen=True)
class SymmetricMatrix:
    """A_ij = A_ji = C_ij (i < j), A_ii = 2 C_ii for F = sum_{i<=j} C_ij T_i T_j."""

    entries: tuple[tuple, ...]

    def __post_init__(self):
        n = len(self.entries)
        for i in range(n):
            if len(self.entries[i]) != n:
                raise DiscriminantError("matrix must be square")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise DiscriminantError("matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def from_quadratic_form(cls, f: HomogeneousForm) -> "SymmetricMatrix":
        if f.degree != 2:
            raise DiscriminantError("need a quadratic form")
        N, R = f.nvars, f.ring
        A = [[R.zero] * N for _ in range(N)]
        for mono, c in f.coeffs.items():
            idx = [i for i, e in enumerate(mono) for _ in range(e)]
            i, j = idx
            if i == j:
                A[i][i] = R.mul(R.from_int(2), c)
            else:
                A[i][j] = A[j][i] = c
        return cls(tuple(tuple(r) for r in A))

    def to_quadratic_form(self, ring=ZZ) -> HomogeneousForm:
        """Inverse of ``from_quadratic_form``; diagonal entries must be even over Z."""
        N = self.size
        coeffs = {}
        for i in range(N):
            for j in range(i, N):
                mono = tuple((1 if t in (i, j) else 0) + (1 if t == i == j else 0) for t in range(N))
                if i == j:
                    a = self.entries[i][i]
                    if ring == ZZ and a % 2:
                        raise DiscriminantError("diagonal entries must be even")
                    c = a // 2 if ring == ZZ else Fraction(a) / 2
                else:
                    c = self.entries[i][j]
                coeffs[mono] = c
        return HomogeneousForm(N, 2, ring, coeffs)


def determinant(rows: Sequence[Sequence], ring=ZZ):
    """Exact determinant over Z, Q or a finite field."""
    n = len(rows)
    if isinstance(ring, FieldSpec):
        M = [list(r) for r in rows]
        det = ring.one
        for c in range(n):
            piv = next((r for r in range(c, n) if M[r][c] != 0), None)
            if piv is None:
                return ring.zero
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                det = ring.neg(det)
            det = ring.mul(det, M[c][c])
            inv = ring.inv(M[c][c])
            for r in range(c + 1, n):
                if M[r][c]:
                    fac = ring.mul(M[r][c], inv)
                    M[r] = [ring.sub(x, ring.mul(fac, y)) for x, y in zip(M[r], M[c])]
        return det
    # fraction-free Bareiss over Z/Q
    M = [[Fraction(x) for x in r] for r in rows]
    sign, prev = 1, Fraction(1)
    for c in range(n - 1):
        if M[c][c] == 0:
            piv = next((r for r in range(c + 1, n) if M[r][c] != 0), None)
            if piv is None:
                return ring.from_int(0)
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                M[r][k] = (M[r][k] * M[c][c] - M[r][c] * M[c][k]) / prev
        prev = M[c][c]
    det = sign * M[n - 1][n - 1] if n else Fraction(1)
    return int(det) if ring == ZZ else det


def quadric_disc(A: SymmetricMatrix, ring=ZZ):
    """det A; equals disc_d = disc_r of the corresponding quadric."""
    return determinant(A.entries, ring)


def elementary_symmetric(values: Sequence, ring=ZZ) -> list:
    """[e_1, ..., e_len] of the given ring elements."""
    R = ring
    e = [R.one] + [R.zero] * len(values)
    for x in values:
        for k in range(len(values), 0, -1):
            e[k] = R.add(e[k], R.mul(e[k - 1], x))
    return e[1:]


def salmon_disc(s: SylvesterCoefficients, ring=ZZ):
    """Degree-32 Salmon polynomial: ((s^2-4rt)^2 - 64 t^3 p)^2 - 2^11 (8 t^6 q + t^4 s (s^2 - 4rt)).

    p, q, r, s, t are the elementary symmetric functions of (a, b, c, d, e).  This
    grouping is the one that agrees with 3^-27 disc_d of the Sylvester cubic;
    the frequently printed variant with 64 and 4 exchanged in the first factor
    does not (see ``salmon_disc_printed``).
    """
    R = ring
    p, q, r, s_, t = elementary_symmetric(s.as_tuple(), R)
    c = R.from_int
    s2_4rt = R.sub(R.mul(s_, s_), R.mul(c(4), R.mul(r, t)))
    t2 = R.mul(t, t)
    t3 = R.mul(t2, t)
    t4 = R.mul(t2, t2)
    t6 = R.mul(t3, t3)
    inner = R.sub(R.mul(s2_4rt, s2_4rt), R.mul(c(64), R.mul(t3, p)))
    tail = R.add(R.mul(c(8), R.mul(t6, q)), R.mul(t4, R.mul(s_, s2_4rt)))
    return R.sub(R.mul(inner, inner), R.mul(c(2**11), tail))


def salmon_disc_printed(s: SylvesterCoefficients):
    """((s^2-64rt)^2 - 4t^3 p)^2 - 2^11(8t^6 q + t^4 s(s^2-4rt)) over Z, kept for comparison."""
    p, q, r, s_, t = elementary_symmetric(s.as_tuple())
    return ((s_**2 - 64 * r * t) ** 2 - 4 * t**3 * p) ** 2 - 2**11 * (8 * t**6 * q + t**4 * s_ * (s_**2 - 4 * r * t))


# ---------------------------------------------------------------------------
# topological sign


@dataclass(frozen=True)
class TopologySignReport:
    n: int
    d: int
    phi: int
    e_real: int
    N: int
    sign: int
    matches_epsilon: bool


def euler_phi_value(n: int, d: int) -> int:
    """((1-d)^(n+2) - (1-(n+2)d)) / d: Euler number of a smooth degree-d hypersurface in P^{n+1}."""
    num = (1 - d) ** (n + 2) - (1 - (n + 2) * d)
    if num % d:
        raise InternalError("Euler characteristic not integral")
    return num // d


def topology_sign(n: int, d: int) -> TopologySignReport:
    if n % 2:
        raise DiscriminantError("topology_sign needs even n")
    if d < 1:
        raise DiscriminantError("degree must be positive")
    phi = euler_phi_value(n, d)
    e_real = d % 2
    twice = phi - (-1) ** (n // 2) * e_real
    if twice % 2:
        raise InternalError("N is not integral")
    N = twice // 2
    sign = (-1) ** N
    matches = sign == epsilon(n, d) if d >= 2 else True
    return TopologySignReport(n, d, phi, e_real, N, sign, matches)


# ---------------------------------------------------------------------------
# Jacobian witness search


@dataclass(frozen=True)
class SingularPoint:
    degree: int  # the point lives over F_{q^degree}
    field: FieldSpec
    point: tuple[int, ...]


def find_singular_point(f: HomogeneousForm, max_ext: int = 2,
                        budget: int = DEFAULT_BUDGET) -> SingularPoint | None:
    """A projective point over some F_{q^k}, k <= max_ext, where f and all D_i f vanish.

    Absence is not a smoothness certificate; only disc_d is.
    """
    F = f.ring
    if not isinstance(F, FieldSpec):
        raise DiscriminantError("find_singular_point needs a finite-field form")
    if f.is_zero:
        raise DiscriminantError("the zero form has no hypersurface")
    forms = [f] + gradient(f)
    for k in range(1, max_ext + 1):
        E = extension_of(F, k)
        pt = first_common_zero(forms, E, budget)
        if pt is not None:
            return SingularPoint(k, E, pt)
    return None


__all__ = [
    "BudgetExceeded", "DiscriminantError", "DiscriminantInvariants", "DiscriminantReport",
    "InternalError", "SingularPoint", "SymmetricMatrix", "TopologySignReport", "a_exponent",
    "binary_disc_from_roots", "binary_form_from_roots", "determinant", "disc_d_integer",
    "disc_d_over_field", "disc_d_polynomial", "disc_degree", "discriminant_report",
    "discriminants_over_integers", "elementary_symmetric", "epsilon", "euler_phi_value",
    "find_singular_point", "quadric_disc", "salmon_disc", "salmon_disc_printed",
    "signed_discriminant", "topology_sign",
]
