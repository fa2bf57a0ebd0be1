"""Random generators and the acceptance corpus.

Every criterion runner takes a seed, builds its own ``random.Random`` and
returns a ``CriterionResult``; the cli ``corpus`` subcommand and the test
suite share these runners.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra import ZZ, FieldSpec, build_extension
from .char2 import (artin_schreier_class, artin_schreier_from_unit, lifted_signed_discriminant,
                    mod4_square_class, sylvester_char2_bit)
from .discriminant import (SymmetricMatrix, binary_disc_from_roots, binary_form_from_roots, determinant,
                           disc_d_integer, disc_d_over_field, discriminant_report, epsilon,
                           find_singular_point, quadric_disc, salmon_disc, topology_sign)
from .forms import (HomogeneousForm, SylvesterCoefficients, act_linear, fermat_form, from_dense,
                    monomials, num_monomials, sylvester_form)
from .zeta import verify_determinant_theorem

# ---------------------------------------------------------------------------
# generators


def random_integer_form(rng: random.Random, nvars: int, degree: int, bound: int = 3,
                        density: float = 1.0) -> HomogeneousForm:
    vals = [rng.randint(-bound, bound) if rng.random() < density else 0
            for _ in range(num_monomials(nvars, degree))]
    return from_dense(nvars, degree, ZZ, vals)


def random_field_form(rng: random.Random, F: FieldSpec, nvars: int, degree: int) -> HomogeneousForm:
    return from_dense(nvars, degree, F, [rng.randrange(F.q) for _ in range(num_monomials(nvars, degree))])


def random_smooth_form(rng: random.Random, F: FieldSpec, nvars: int, degree: int,
                       tries: int = 500) -> HomogeneousForm:
    for _ in range(tries):
        f = random_field_form(rng, F, nvars, degree)
        if not f.is_zero and disc_d_over_field(f) != 0:
            return f
    raise RuntimeError(f"no smooth form found over {F!r}")  # pragma: no cover


def random_root_pairs(rng: random.Random, d: int, bound: int = 4) -> list[tuple[int, int]]:
    out = []
    while len(out) < d:
        u, v = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if (u, v) != (0, 0):
            out.append((u, v))
    return out


def random_symmetric_matrix(rng: random.Random, size: int, bound: int = 3) -> SymmetricMatrix:
    A = [[0] * size for _ in range(size)]
    for i in range(size):
        A[i][i] = 2 * rng.randint(-bound, bound)
        for j in range(i + 1, size):
            A[i][j] = A[j][i] = rng.randint(-bound, bound)
    return SymmetricMatrix(tuple(tuple(r) for r in A))


def random_sylvester(rng: random.Random, bound: int = 3) -> SylvesterCoefficients:
    return SylvesterCoefficients(*(rng.randint(-bound, bound) for _ in range(5)))


def random_integer_matrix(rng: random.Random, size: int, bound: int = 2) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]


def _nullspace_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    M = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                fac = M[i][c]
                M[i] = [(x - fac * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc] % p
        basis.append(v)
    return basis


def singular_form_at(rng: random.Random, F: FieldSpec, nvars: int, degree: int,
                     point: tuple[int, ...], E: FieldSpec) -> HomogeneousForm | None:
    """Random form over the prime field F, singular at ``point`` (coordinates in E ⊇ F)."""
    if F.k != 1:
        raise ValueError("singular constructions use prime fields")
    p = F.p
    monos = monomials(nvars, degree)
    rows = []
    for target in range(nvars + 1):
        # target == nvars is f itself, otherwise D_target f
        vals = []
        for mono in monos:
            if target < nvars:
                e = mono[target]
                if e == 0:
                    vals.append(0)
                    continue
                reduced = mono[:target] + (e - 1,) + mono[target + 1:]
                scale = e % p
            else:
                reduced, scale = mono, 1
            v = E.from_int(scale)
            for x, k in zip(point, reduced):
                v = E.mul(v, E.pow(x, k))
            vals.append(v)
        for digit in range(E.k):
            rows.append([E.to_poly(v)[digit] if digit < len(E.to_poly(v)) else 0 for v in vals])
    basis = _nullspace_mod_p(rows, len(monos), p)
    if not basis:
        return None
    for _ in range(20):
        coeffs = [0] * len(monos)
        for v in basis:
            c = rng.randrange(p)
            coeffs = [(a + c * b) % p for a, b in zip(coeffs, v)]
        if any(coeffs):
            return from_dense(nvars, degree, F, coeffs)
    return None


def rational_singular_form(rng: random.Random, F: FieldSpec, nvars: int, degree: int,
                           tries: int = 100) -> HomogeneousForm:
    for _ in range(tries):
        point = tuple(rng.randrange(F.q) for _ in range(nvars))
        if any(point):
            f = singular_form_at(rng, F, nvars, degree, point, F)
            if f is not None:
                return f
    raise ValueError(f"no nonzero form of degree {degree} is singular at a random point")


def quadratic_singular_form(rng: random.Random, F: FieldSpec, nvars: int, degree: int,
                            tries: int = 100) -> HomogeneousForm:
    """Singular at a point of P(F_{q^2}) that is not F_q-rational (and at its conjugate).

    Binary forms need degree >= 4 (two conjugate double roots).
    """
    E = build_extension(F.p, 2)
    for _ in range(tries):
        alpha = rng.randrange(F.p, E.q)  # not in the prime field
        point = (1, alpha) + tuple(rng.randrange(E.q) for _ in range(nvars - 2))
        f = singular_form_at(rng, F, nvars, degree, point, E)
        if f is not None:
            return f
    raise ValueError(f"no nonzero form of degree {degree} is singular at a conjugate pair")


def squarefree_binary_form(rng: random.Random, F: FieldSpec, d: int) -> HomogeneousForm:
    return random_smooth_form(rng, F, 2, d)


def char2_cubic_surfaces(rng: random.Random, count: int = 12):
    """Smooth cubic surfaces over F_2 as (label, Sylvester tuple or None, form).

    Fermat first, then the smooth Sylvester forms, then random smooth ones.
    """
    F2 = build_extension(2, 1)
    out = [("fermat", None, fermat_form(4, 3, F2))]
    for t in [(0, 1, 1, 1, 1), (1, 0, 1, 1, 1), (1, 1, 0, 1, 1), (1, 1, 1, 1, 1)]:
        s = SylvesterCoefficients(*t)
        f = sylvester_form(s, F2)
        if disc_d_over_field(f) != 0:
            out.append((f"sylvester{t}", s, f))
    while len(out) < count:
        out.append(("random", None, random_smooth_form(rng, F2, 4, 3)))
    return out


# ---------------------------------------------------------------------------
# criteria


@dataclass
class CriterionResult:
    number: int
    title: str
    checked: int
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    limit: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def within_time(self) -> bool:
        return self.seconds <= self.limit

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0 and self.within_time

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.within_time else f" (over the {self.limit:.0f} s limit)"
        first = f"; first failure: {self.failures[0]}" if self.failures else ""
        return (f"{status} criterion {self.number:2d} {self.title}: {self.checked} checks, "
                f"{len(self.failures)} failures, {self.seconds:.1f} s{extra}{first}")

    def as_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed, "checked": self.checked,
                "failures": self.failures[:10], "seconds": round(self.seconds, 3), "limit": self.limit,
                "notes": self.notes}


class _Check:
    def __init__(self):
        self.checked = 0
        self.failures: list[str] = []

    def __call__(self, ok: bool, message: str):
        self.checked += 1
        if not ok:
            self.failures.append(message)


def criterion_golden(seed: int = 0) -> _Check:
    check = _Check()
    check(discriminant_report(fermat_form(3, 3)).disc_d == 3**9, "Fermat cubic curve")
    check(discriminant_report(fermat_form(4, 3)).disc_d == 3**27, "Fermat cubic surface")
    clebsch = sylvester_form(SylvesterCoefficients(1, 1, 1, 1, 1))
    third = HomogeneousForm(4, 3, ZZ, {m: c // 3 for m, c in clebsch.coeffs.items()})
    check(all(c % 3 == 0 for c in clebsch.coeffs.values()), "Clebsch coefficients divisible by 3")
    check(discriminant_report(third).disc_d == -5, "Clebsch/3")
    for n in (0, 2, 4):
        unit = fermat_form(n + 2, 2)
        check(discriminant_report(unit).disc_r == 2 ** (n + 2), f"unit quadric n={n}")
    return check


def criterion_binary(seed: int = 0, trials: int = 100) -> _Check:
    rng = random.Random(f"{seed}:binary")
    check = _Check()
    for _ in range(trials):
        d = rng.randint(2, 5)
        pairs = random_root_pairs(rng, d)
        f = binary_form_from_roots(pairs)
        rep = discriminant_report(f)
        product = binary_disc_from_roots(pairs)
        half = 1
        for i in range(d):
            for j in range(i + 1, d):
                half *= pairs[i][0] * pairs[j][1] - pairs[j][0] * pairs[i][1]
        check(rep.disc_d == product and rep.signed == half * half, f"roots {pairs}")
    return check


def criterion_quadrics(seed: int = 0, trials: int = 100) -> _Check:
    rng = random.Random(f"{seed}:quadrics")
    check = _Check()
    for t in range(trials):
        size = (2, 4, 6)[t % 3]
        A = random_symmetric_matrix(rng, size)
        f = A.to_quadratic_form()
        check(discriminant_report(f).disc_d == quadric_disc(A), f"matrix {A.entries}")
    return check


def criterion_salmon(seed: int = 0, trials: int = 25) -> _Check:
    rng = random.Random(f"{seed}:salmon")
    check = _Check()
    check(salmon_disc(SylvesterCoefficients(0, 1, 1, 1, 1)) == 1, "disc_s(0,1,1,1,1) = 1")
    for _ in range(trials):
        s = random_sylvester(rng)
        check(disc_d_integer(sylvester_form(s)) == 3**27 * salmon_disc(s), f"tuple {s.as_tuple()}")
    return check


def criterion_transformations(seed: int = 0, trials: int = 50) -> _Check:
    rng = random.Random(f"{seed}:transform")
    check = _Check()
    for n, d in ((0, 3), (2, 2), (2, 3)):
        N = n + 2
        m = N * (d - 1) ** (n + 1)
        for _ in range(trials):
            f = random_integer_form(rng, N, d, bound=2)
            lam = rng.randint(-2, 3)
            A = random_integer_matrix(rng, N, bound=1)
            base = disc_d_integer(f)
            check(disc_d_integer(f.scale(lam)) == lam**m * base, f"scaling ({n},{d}) lam={lam}")
            detA = determinant(A)
            check(disc_d_integer(act_linear(f, A)) == detA ** (d * (d - 1) ** (n + 1)) * base,
                  f"substitution ({n},{d}) A={A}")
    return check


def criterion_topology(seed: int = 0) -> _Check:
    check = _Check()
    for n in range(0, 11, 2):
        for d in range(2, 13):
            check(topology_sign(n, d).sign == epsilon(n, d), f"(n,d)=({n},{d})")
    return check


def criterion_mod4(seed: int = 0, trials: int = 100) -> _Check:
    rng = random.Random(f"{seed}:mod4")
    check = _Check()
    for n, d in ((0, 2), (0, 3), (0, 5), (2, 2), (2, 3)):
        for _ in range(trials):
            f = random_integer_form(rng, n + 2, d)
            check(mod4_square_class(f, n, d).is_square_class, f"({n},{d}) {f}")
    return check


def criterion_binary_odd(seed: int = 0, trials: int = 200) -> _Check:
    rng = random.Random(f"{seed}:binary-odd")
    check = _Check()
    primes = (3, 5, 7, 11, 13, 31)
    for t in range(trials):
        F = build_extension(primes[t % len(primes)], 1)
        f = squarefree_binary_form(rng, F, rng.randint(2, 6))
        v = verify_determinant_theorem(f, 0, f.degree)
        check(v.agree, f"{F!r}: {v.form}")
    return check


def criterion_quadric_surfaces(seed: int = 0, trials: int = 50) -> _Check:
    rng = random.Random(f"{seed}:quadric-surfaces")
    check = _Check()
    for t in range(trials):
        F = build_extension((3, 5, 7)[t % 3], 1)
        f = random_smooth_form(rng, F, 4, 2)
        v = verify_determinant_theorem(f, 2, 2)
        check(v.agree and v.zeta.method == "newton", f"{F!r}: {v.form}")
    return check


def criterion_char2_surfaces(seed: int = 0, count: int = 12) -> _Check:
    rng = random.Random(f"{seed}:char2-surfaces")
    check = _Check()
    F4 = build_extension(2, 2)
    for label, s, f in char2_cubic_surfaces(rng, count):
        v2 = verify_determinant_theorem(f, 2, 3)
        check(v2.agree, f"{label} over F_2: lhs {v2.lhs} rhs {v2.rhs}")
        g = HomogeneousForm(4, 3, F4, dict(f.coeffs))
        v4 = verify_determinant_theorem(g, 2, 3)
        check(v4.agree, f"{label} over F_4: lhs {v4.lhs} rhs {v4.rhs}")
        if s is not None:
            check(sylvester_char2_bit(s, f.ring) == 1 == v2.character.trace_bit, f"{label}: bit over F_2")
            check(sylvester_char2_bit(s, F4) == 0 == v4.character.trace_bit, f"{label}: bit over F_4")
            check(v2.lhs == -1 and v4.lhs == 1, f"{label}: det over F_2 / F_4")
    return check


def criterion_smoothness(seed: int = 0) -> _Check:
    rng = random.Random(f"{seed}:smoothness")
    check = _Check()
    spaces = [(3, 2, 4), (5, 2, 4), (3, 4, 2), (5, 4, 2), (2, 4, 3), (3, 4, 3), (5, 4, 3), (7, 2, 4)]
    items = []
    for k in range(20):
        p, nvars, d = spaces[k % len(spaces)]
        F = build_extension(p, 1)
        if k % 2 == 0:
            items.append(("rational-singular", rational_singular_form(rng, F, nvars, d)))
        else:
            items.append(("quadratic-singular", quadratic_singular_form(rng, F, nvars, d)))
    for k in range(20):
        p, nvars, d = spaces[k % len(spaces)]
        items.append(("smooth", random_smooth_form(rng, build_extension(p, 1), nvars, d)))
    for label, f in items:
        vanishes = disc_d_over_field(f) == 0
        witness = find_singular_point(f, 2)
        check(vanishes == (witness is not None), f"{label} {f.ring!r}: {f}")
        check(vanishes == (label != "smooth"), f"{label} classification {f}")
    return check


def _random_lift(rng: random.Random, f: HomogeneousForm) -> dict:
    """Integer lift of a form over F_2 differing from the 0/1 lift by multiples of 2."""
    return {m: (f[m] + 2 * rng.randrange(4),) for m in monomials(f.nvars, f.degree)}


def criterion_char2_invariance(seed: int = 0, trials: int = 50) -> _Check:
    rng = random.Random(f"{seed}:char2-invariance")
    check = _Check()
    F2, F4 = build_extension(2, 1), build_extension(2, 2)
    shapes = [(2, 2), (2, 3), (2, 4), (4, 2), (4, 3)]
    for t in range(trials):
        nvars, d = shapes[t % len(shapes)]
        f = random_smooth_form(rng, F2, nvars, d)
        base = lifted_signed_discriminant(f)
        same = all(lifted_signed_discriminant(f, _random_lift(rng, f)) == base for _ in range(10))
        check(same, f"lift dependence for {f}")
    for t in range(trials):
        F = (F2, F4)[t % 2]
        nvars, d = shapes[t % len(shapes)]
        if F is F4 and nvars == 4 and d == 3:
            nvars, d = 4, 2
        f = random_smooth_form(rng, F, nvars, d)
        ctx = artin_schreier_class(f)
        W = ctx.lift
        bits = {ctx.trace_bit}
        for _ in range(5):
            offset = W.element([rng.randrange(8) for _ in range(F.k)])
            bits.add(artin_schreier_from_unit(W, ctx.D, offset).trace_bit)
        check(len(bits) == 1, f"witness dependence for {f} over {F!r}")
    return check


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float
    run: Callable[[int], _Check]


CRITERIA = [
    Criterion(1, "golden discriminants", 10, criterion_golden),
    Criterion(2, "binary forms vs product formula", 30, criterion_binary),
    Criterion(3, "quadrics vs det A", 60, criterion_quadrics),
    Criterion(4, "Salmon identity", 120, criterion_salmon),
    Criterion(5, "transformation laws", 60, criterion_transformations),
    Criterion(6, "topological sign", 1, criterion_topology),
    Criterion(7, "mod-4 squareness", 60, criterion_mod4),
    Criterion(8, "determinant theorem, n=0, odd q", 30, criterion_binary_odd),
    Criterion(9, "determinant theorem, quadric surfaces", 60, criterion_quadric_surfaces),
    Criterion(10, "determinant theorem, cubic surfaces in char 2", 300, criterion_char2_surfaces),
    Criterion(11, "smoothness criterion", 60, criterion_smoothness),
    Criterion(12, "char 2 lift/witness independence", 30, criterion_char2_invariance),
]


def run_criterion(c: Criterion, seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    check = c.run(seed)
    elapsed = time.perf_counter() - start
    return CriterionResult(c.number, c.title, check.checked, check.failures, elapsed, c.limit)


def heavy_cubic_f3(seed: int = 0) -> CriterionResult:
    """Optional: a smooth cubic surface over F_3 with counts through F_{3^6} (about 4e8 points)."""
    rng = random.Random(f"{seed}:heavy")
    F3 = build_extension(3, 1)
    start = time.perf_counter()
    check = _Check()
    f = random_smooth_form(rng, F3, 4, 3)
    v = verify_determinant_theorem(f, 2, 3, optional_heavy=True)
    check(v.agree and v.zeta.method == "newton", f"{v.form}")
    return CriterionResult(10, "optional heavy: cubic surface over F_3", check.checked, check.failures,
                           time.perf_counter() - start, 3600)


def run_acceptance(seed: int = 0, only: list[int] | None = None,
                   optional_heavy: bool = False) -> list[CriterionResult]:
    out = [run_criterion(c, seed) for c in CRITERIA if only is None or c.number in only]
    if optional_heavy:
        out.append(heavy_cubic_f3(seed))
    return out


__all__ = [
    "CRITERIA", "Criterion", "CriterionResult", "char2_cubic_surfaces", "quadratic_singular_form",
    "random_field_form", "random_integer_form", "random_integer_matrix", "random_root_pairs",
    "random_smooth_form", "random_sylvester", "random_symmetric_matrix", "rational_singular_form",
    "run_acceptance", "run_criterion", "singular_form_at", "squarefree_binary_form",
]
