"""Characteristic 2: the signed discriminant modulo 8 and its Artin-Schreier class.

For a smooth form over F_{2^r} the signed discriminant of any lift to the
unramified ring W = (Z/8)[x]/(h~) is a unit ``D`` that is a square modulo 4.
With ``a`` any unit squaring to ``D`` modulo 2, ``w = (D a^-2 - 1)/4 mod 2``
defines the extension ``t^2 + t = w``; its class in F_{2^r}/{t^2+t} is the
absolute trace of ``w``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebra import ZZ, FieldSpec, LiftRing, field_sqrt_char2, field_trace
from .discriminant import (DiscriminantError, InternalError, disc_d_integer, disc_d_polynomial,
                           elementary_symmetric, epsilon)
from .forms import HomogeneousForm, SylvesterCoefficients


class SingularHypersurface(DiscriminantError):
    """disc_d vanishes: the character is undefined."""


@dataclass(frozen=True)
class Mod4Class:
    value: int
    is_square_class: bool


def mod4_square_class(f: HomogeneousForm, n: int | None = None, d: int | None = None,
                      seed: int = 0) -> Mod4Class:
    n = f.nvars - 2 if n is None else n
    d = f.degree if d is None else d
    if f.ring != ZZ:
        raise DiscriminantError("mod4_square_class expects an integral form")
    if f.nvars != n + 2 or f.degree != d:
        raise DiscriminantError("form does not match (n, d)")
    eps = epsilon(n, d)  # rejects odd n
    value = eps * disc_d_integer(f, seed) % 4
    return Mod4Class(value, value in (0, 1))


@dataclass(frozen=True)
class Char2Context:
    base: FieldSpec
    lift: LiftRing
    D: tuple  # lifted signed discriminant in the lift ring
    sqrt_witness: tuple
    w: int  # element of the residue field
    trace_bit: int

    @property
    def trivial(self) -> bool:
        return self.trace_bit == 0


def default_lift(f: HomogeneousForm) -> dict:
    """Coefficient lift with digits in {0, 1}: monomial -> coefficient list in x."""
    F = f.ring
    return {m: tuple(F.to_poly(c)) for m, c in f.coeffs.items()}


def lifted_signed_discriminant(f: HomogeneousForm, lift: Mapping | None = None,
                               seed: int = 0) -> tuple:
    """epsilon(n, d) * disc_d of a lift of ``f``, reduced into the mod-8 lift ring."""
    F = f.ring
    W = LiftRing(F)
    polys = dict(lift) if lift is not None else default_lift(f)
    for m, cs in polys.items():
        if F.from_poly([x % 2 for x in cs]) != f[m]:
            raise DiscriminantError(f"lift of coefficient at {m} does not reduce to it")
    if set(polys) - set(f.coeffs):
        for m in set(polys) - set(f.coeffs):
            if any(x % 2 for x in polys[m]):
                raise DiscriminantError(f"lift adds a nonzero coefficient at {m}")
    eps = epsilon(f.nvars - 2, f.degree)
    if all(len(cs) <= 1 or not any(cs[1:]) for cs in polys.values()):
        g = HomogeneousForm(f.nvars, f.degree, ZZ, {m: (cs[0] if cs else 0) for m, cs in polys.items()})
        return W.from_int(eps * disc_d_integer(g, seed))
    P = disc_d_polynomial(f.nvars, f.degree, polys, seed)
    return W.element([eps * c for c in P])


def artin_schreier_from_unit(W: LiftRing, D: tuple, witness_offset: tuple | None = None) -> Char2Context:
    F = W.base
    u = W.reduce(D)
    if u == 0:
        raise SingularHypersurface("lifted signed discriminant is not a unit")
    a = W.lift(field_sqrt_char2(u, F))
    if witness_offset is not None:
        a = W.add(a, W.mul(W.from_int(2), witness_offset))
    a2 = W.mul(a, a)
    if any((x - y) % 4 for x, y in zip(a2, D)):
        raise InternalError("D is not congruent to a square modulo 4")
    ainv = W.inv(a)
    x = W.sub(W.mul(D, W.mul(ainv, ainv)), W.one)
    w = W.reduce(W.divide_by(x, 4))
    return Char2Context(F, W, D, a, w, field_trace(w, F))


def artin_schreier_class(f: HomogeneousForm, n: int | None = None, d: int | None = None,
                         lift: Mapping | None = None, witness_offset: tuple | None = None,
                         seed: int = 0) -> Char2Context:
    """The Artin-Schreier class of the determinant character of a smooth form over F_{2^r}."""
    F = f.ring
    if not isinstance(F, FieldSpec) or F.p != 2:
        raise DiscriminantError("artin_schreier_class needs a form over F_{2^r}")
    n = f.nvars - 2 if n is None else n
    d = f.degree if d is None else d
    if f.nvars != n + 2 or f.degree != d:
        raise DiscriminantError("form does not match (n, d)")
    epsilon(n, d)
    W = LiftRing(F)
    D = lifted_signed_discriminant(f, lift, seed)
    if W.reduce(D) == 0:
        # D mod 2 is disc_d(f) itself
        raise SingularHypersurface("disc_d(f) = 0: singular hypersurface")
    return artin_schreier_from_unit(W, D, witness_offset)


def sylvester_char2_bit(s: SylvesterCoefficients, field: FieldSpec) -> int:
    """Trace bit from the closed congruence epsilon disc_d(F_s) = -3 s^4 (mod 8)."""
    if field.p != 2:
        raise DiscriminantError("sylvester_char2_bit needs characteristic 2")
    s4 = elementary_symmetric(s.as_tuple(), field)[3]
    if s4 == 0:
        # disc_d(F_s) = s^8 (mod 2)
        raise SingularHypersurface("s = e_4(a, ..., e) vanishes: the Sylvester cubic is singular")
    W = LiftRing(field)
    st = W.lift(s4)
    st2 = W.mul(st, st)
    D = W.mul(W.from_int(-3), W.mul(st2, st2))
    return artin_schreier_from_unit(W, D).trace_bit
