"""Multivariate resultants of n forms in n variables via Macaulay matrices.

``res = det(M) / det(M')`` where ``M`` is the Macaulay matrix at the critical
degree and ``M'`` its minor on non-reduced monomials.  The ratio is taken
modulo a stream of word-size primes and reconstructed by CRT.  When ``det(M')``
vanishes modulo a prime, a random unimodular change of variables is tried; if
that keeps failing, the prime falls back to the perturbation
``g_i + lam * x_i^e`` (the constant term of the resulting polynomial in ``lam``
is the resultant), interpolated at enough values of ``lam``.
"""
from __future__ import annotations

import functools
import logging
import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import ZZ, crt_reconstruct, prime_stream
from .forms import HomogeneousForm, act_linear, monomials, num_monomials

log = logging.getLogger(__name__)

SUBSTITUTION_RETRIES = 8


class ResultantError(ValueError):
    """Inputs that do not define a resultant (wrong count, degrees, ring)."""


@dataclass(frozen=True)
class MacaulayLayout:
    """Index structure of the Macaulay matrix for ``nvars`` forms of degree ``e``."""

    nvars: int
    e: int
    columns: tuple  # monomials of the critical degree, grlex descending
    rows: tuple  # (form index, shift monomial) for each column monomial
    nonreduced: tuple  # positions of non-reduced monomials

    @property
    def size(self) -> int:
        return len(self.columns)


@functools.lru_cache(maxsize=None)
def macaulay_layout(nvars: int, e: int) -> MacaulayLayout:
    t = nvars * (e - 1) + 1
    cols = tuple(monomials(nvars, t))
    rows, nonred = [], []
    for pos, mono in enumerate(cols):
        divisible = [i for i in range(nvars) if mono[i] >= e]
        i = divisible[0]
        shift = mono[:i] + (mono[i] - e,) + mono[i + 1 :]
        rows.append((i, shift))
        if len(divisible) > 1:
            nonred.append(pos)
    return MacaulayLayout(nvars, e, cols, tuple(rows), tuple(nonred))


def _column_index(layout: MacaulayLayout) -> dict:
    return {m: j for j, m in enumerate(layout.columns)}


@functools.lru_cache(maxsize=None)
def _row_patterns(nvars: int, e: int):
    """For each row, the (column, coefficient-monomial) pairs it touches."""
    layout = macaulay_layout(nvars, e)
    colidx = _column_index(layout)
    gmonos = monomials(nvars, e)
    patterns = []
    for i, shift in layout.rows:
        entries = []
        for gm in gmonos:
            col = colidx[tuple(a + b for a, b in zip(shift, gm))]
            entries.append((col, gm))
        patterns.append((i, entries))
    return patterns


def macaulay_matrix(forms: Sequence[HomogeneousForm], modulus: int | None = None):
    """The Macaulay matrix as a list of integer rows (reduced mod ``modulus`` if given)."""
    nvars, e = forms[0].nvars, forms[0].degree
    layout = macaulay_layout(nvars, e)
    n = layout.size
    M = [[0] * n for _ in range(n)]
    for r, (i, entries) in enumerate(_row_patterns(nvars, e)):
        g = forms[i].coeffs
        row = M[r]
        for col, gm in entries:
            c = g.get(gm, 0)
            if c:
                row[col] = c % modulus if modulus else c
    return M


def det_mod_p(M, p: int) -> int:
    """Determinant modulo a prime ``p < 2^31`` by Gaussian elimination."""
    A = np.array(M, dtype=np.int64) % p if not isinstance(M, np.ndarray) else M.astype(np.int64) % p
    n = A.shape[0]
    if n == 0:
        return 1
    det = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            A[[c, r]] = A[[r, c]]
            det = -det
        piv = int(A[c, c])
        det = det * piv % p
        if c + 1 < n:
            inv = pow(piv, -1, p)
            factors = (A[c + 1 :, c] * inv) % p
            A[c + 1 :, c:] = (A[c + 1 :, c:] - np.outer(factors, A[c, c:]) % p) % p
    return det % p


def _minor(M, idx):
    return [[M[r][c] for c in idx] for r in idx]


def _check_forms(forms: Sequence[HomogeneousForm]):
    if not forms:
        raise ResultantError("need at least one form")
    N = forms[0].nvars
    if len(forms) != N:
        raise ResultantError(f"need {N} forms in {N} variables, got {len(forms)}")
    e = forms[0].degree
    for g in forms:
        if g.nvars != N:
            raise ResultantError("wrong variable count")
        if g.degree != e:
            raise ResultantError("unequal degrees")
        if g.ring != ZZ:
            raise ResultantError("macaulay_resultant expects forms over Z")
    if e < 1:
        raise ResultantError("degrees must be positive")
    return N, e


def hadamard_bound(M) -> int:
    prod = 1
    for row in M:
        prod *= sum(x * x for x in row)
    return math.isqrt(prod) + 1


def generic_bound(forms: Sequence[HomogeneousForm]) -> int:
    """Coefficient-height bound on the universal resultant, valid for any input.

    |res| <= 2^(sum_v deg_v Res) * ||det M_generic||_1 * prod_i H_i^(D_i), using
    multiplicativity of the Mahler measure on ``det M = res * det M'``.
    """
    N, e = forms[0].nvars, forms[0].degree
    T = num_monomials(N, e)
    D = e ** (N - 1)
    size = macaulay_layout(N, e).size
    bound = 2 ** (N * T * D) * T**size
    for g in forms:
        H = max((abs(c) for c in g.coeffs.values()), default=1)
        bound *= max(H, 1) ** D
    return bound


def _random_unimodular(N: int, rng: random.Random):
    """Random integer matrix with determinant +-1 (permutation * L * U)."""
    L = [[(1 if i == j else (rng.randint(-2, 2) if i > j else 0)) for j in range(N)] for i in range(N)]
    U = [[(1 if i == j else (rng.randint(-2, 2) if i < j else 0)) for j in range(N)] for i in range(N)]
    perm = list(range(N))
    rng.shuffle(perm)
    LU = [[sum(L[i][k] * U[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    A = [LU[perm[i]] for i in range(N)]
    return A, _perm_sign(perm)


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _substitute_mod(g: HomogeneousForm, A, p: int) -> HomogeneousForm:
    gp = HomogeneousForm(g.nvars, g.degree, ZZ, {m: c % p for m, c in g.coeffs.items()})
    h = act_linear(gp, A)
    return HomogeneousForm(g.nvars, g.degree, ZZ, {m: c % p for m, c in h.coeffs.items()})


def _ratio_mod_p(forms, p: int, layout: MacaulayLayout):
    M = macaulay_matrix(forms, p)
    den = det_mod_p(_minor(M, layout.nonreduced), p) if layout.nonreduced else 1
    if den == 0:
        return None
    return det_mod_p(M, p) * pow(den, -1, p) % p


def _perturbed(forms, lam: int, p: int):
    out = []
    N, e = forms[0].nvars, forms[0].degree
    for i, g in enumerate(forms):
        mono = tuple(e if j == i else 0 for j in range(N))
        coeffs = dict(g.coeffs)
        coeffs[mono] = (coeffs.get(mono, 0) + lam) % p
        out.append(HomogeneousForm(N, e, ZZ, coeffs))
    return out


def _resultant_by_perturbation(forms, p: int, layout: MacaulayLayout) -> int:
    """res(g) mod p as the value at 0 of lam -> res(g_i + lam x_i^e)."""
    N, e = forms[0].nvars, forms[0].degree
    degree = N * e ** (N - 1)
    xs, ys = [], []
    lam = 1
    while len(xs) < degree + 1:
        val = _ratio_mod_p(_perturbed(forms, lam, p), p, layout)
        if val is not None:
            xs.append(lam)
            ys.append(val)
        lam += 1
        if lam > p:  # pragma: no cover - p is far larger than the degree
            raise ResultantError("perturbation interpolation ran out of points")
    # Lagrange at 0
    total = 0
    for j, (xj, yj) in enumerate(zip(xs, ys)):
        num, den = 1, 1
        for m, xm in enumerate(xs):
            if m != j:
                num = num * (-xm) % p
                den = den * (xj - xm) % p
        total = (total + yj * num * pow(den, -1, p)) % p
    return total


def resultant_mod_p(forms: Sequence[HomogeneousForm], p: int, rng: random.Random | None = None) -> int:
    """res(g_0, ..., g_{N-1}) mod p."""
    N, e = _check_forms(forms)
    if N > 1 and any(all(c % p == 0 for c in g.coeffs.values()) for g in forms):
        return 0
    layout = macaulay_layout(N, e)
    val = _ratio_mod_p(forms, p, layout)
    if val is not None:
        return val
    rng = rng or random.Random(p)
    exponent = e**N
    for _ in range(SUBSTITUTION_RETRIES):
        A, det_a = _random_unimodular(N, rng)
        subbed = [_substitute_mod(g, A, p) for g in forms]
        val = _ratio_mod_p(subbed, p, layout)
        if val is not None:
            # res(g o A) = det(A)^(e^N) res(g)
            return val * pow(det_a, exponent, p) % p
    log.debug("prime %d: substitutions exhausted, using perturbation", p)
    return _resultant_by_perturbation(forms, p, layout)


def resultant_bound(forms: Sequence[HomogeneousForm], probe_prime: int = (1 << 31) - 1,
                    seed: int = 0) -> int:
    """Upper bound on |res|.

    Hadamard bound of M when det(M') != 0, else of the Macaulay matrix of a
    unimodular substitution (which changes res only by a sign), else generic.
    """
    N, e = _check_forms(forms)
    layout = macaulay_layout(N, e)
    rng = random.Random(seed)
    candidates = [list(forms)]
    for _ in range(3):
        A, _ = _random_unimodular(N, rng)
        candidates.append(None if N == 1 else A)

    for cand in candidates:
        if cand is None:
            break
        gs = cand if isinstance(cand[0], HomogeneousForm) else [act_linear(g, cand) for g in forms]
        M = macaulay_matrix(gs)
        if not layout.nonreduced or det_mod_p(_minor(M, layout.nonreduced), probe_prime) != 0:
            return hadamard_bound(M)
    return generic_bound(forms)


def macaulay_resultant(forms: Sequence[HomogeneousForm], seed: int = 0) -> int:
    """The integral resultant of ``N`` forms of equal degree in ``N`` variables."""
    N, e = _check_forms(forms)
    if all(g.is_zero for g in forms) or (N > 1 and any(g.is_zero for g in forms)):
        # N - 1 forms in N variables always share a projective zero
        return 0
    bound = resultant_bound(forms, seed=seed)
    residues = []
    modulus = 1
    for p in prime_stream():
        rng = random.Random((seed << 32) ^ p)
        residues.append((resultant_mod_p(forms, p, rng), p))
        modulus *= p
        if modulus > 2 * bound:
            break
    return crt_reconstruct(residues, bound)
