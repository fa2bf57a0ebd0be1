"""Vectorised enumeration of projective points over finite fields.

Points of P^{N-1}(F) are split into affine charts by the position ``j`` of the
first nonzero coordinate (normalised to 1).  Each chart is a box ``F^{N-1-j}``
that is further cut into contiguous blocks of at most ``BLOCK`` points, so any
block range can be handed to a separate worker and the per-block counts summed.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .algebra import FieldSpec, build_extension, embed_subfield
from .forms import HomogeneousForm

BLOCK = 1 << 20
DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Enumeration would exceed the configured number of evaluations."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


def projective_size(q: int, dim: int) -> int:
    """|P^dim(F_q)|."""
    return sum(q**i for i in range(dim + 1))


@dataclass(frozen=True)
class CompiledForm:
    """A form over ``field`` prepared for table-driven evaluation."""

    field: FieldSpec
    nvars: int
    exps: np.ndarray  # (terms, nvars)
    logc: np.ndarray  # (terms,) log of coefficients

    @classmethod
    def build(cls, f: HomogeneousForm, field: FieldSpec | None = None) -> "CompiledForm":
        src = f.ring
        if not isinstance(src, FieldSpec):
            raise TypeError("compiled evaluation needs a finite-field form")
        field = field or src
        img = embed_subfield(src, field) if field != src else None
        log, _ = field.log_exp_tables()
        monos, logs = [], []
        for mono, c in f.coeffs.items():
            c = img[c] if img is not None else c
            monos.append(mono)
            logs.append(int(log[c]))
        exps = np.array(monos, dtype=np.int64).reshape(len(monos), f.nvars)
        return cls(field, f.nvars, exps, np.array(logs, dtype=np.int64))


def _chart_block(F: FieldSpec, nvars: int, lead: int, start: int, stop: int) -> np.ndarray:
    """Coordinates (nvars, stop-start) of chart ``lead`` points with index in [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    pts = np.zeros((nvars, idx.size), dtype=np.int64)
    pts[lead] = 1
    q = F.q
    for j in range(nvars - 1, lead, -1):
        pts[j] = idx % q
        idx = idx // q
    return pts


def evaluate_block(cf: CompiledForm, pts: np.ndarray) -> np.ndarray:
    F = cf.field
    log, exp = F.log_exp_tables()
    order = F.q - 1
    logs = log[pts]  # -1 marks zero coordinates
    zero = logs < 0
    logs[zero] = 0
    acc = np.zeros(pts.shape[1], dtype=np.int64)
    for t in range(cf.exps.shape[0]):
        e = cf.exps[t]
        s = np.full(pts.shape[1], cf.logc[t], dtype=np.int64)
        vanish = np.zeros(pts.shape[1], dtype=bool)
        for j in np.nonzero(e)[0]:
            s += int(e[j]) * logs[j]
            vanish |= zero[j]
        val = exp[s % order]
        val[vanish] = 0
        acc = F.vec_add(acc, val)
    return acc


def chart_blocks(q: int, nvars: int, block: int = BLOCK) -> Iterator[tuple[int, int, int]]:
    """(lead, start, stop) ranges covering P^{nvars-1}(F_q)."""
    for lead in range(nvars):
        size = q ** (nvars - lead - 1)
        for start in range(0, size, block):
            yield lead, start, min(size, start + block)


def _count_block(cfs: Sequence[CompiledForm], nvars: int, rng: tuple[int, int, int]) -> int:
    lead, start, stop = rng
    pts = _chart_block(cfs[0].field, nvars, lead, start, stop)
    mask = np.ones(pts.shape[1], dtype=bool)
    for cf in cfs:
        mask &= evaluate_block(cf, pts) == 0
    return int(mask.sum())


def count_common_zeros(forms: Sequence[HomogeneousForm], field: FieldSpec,
                       budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Number of points of P^{N-1}(field) where all ``forms`` vanish."""
    nvars = forms[0].nvars
    required = projective_size(field.q, nvars - 1)
    if required > budget:
        raise BudgetExceeded(required, budget)
    cfs = [CompiledForm.build(g, field) for g in forms if not g.is_zero]
    if not cfs:
        return required
    ranges = list(chart_blocks(field.q, nvars))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return sum(ex.map(lambda r: _count_block(cfs, nvars, r), ranges))
    return sum(_count_block(cfs, nvars, r) for r in ranges)


def first_common_zero(forms: Sequence[HomogeneousForm], field: FieldSpec,
                      budget: int = DEFAULT_BUDGET) -> tuple[int, ...] | None:
    """Some point of P^{N-1}(field) where all forms vanish, or ``None``."""
    nvars = forms[0].nvars
    required = projective_size(field.q, nvars - 1)
    if required > budget:
        raise BudgetExceeded(required, budget)
    cfs = [CompiledForm.build(g, field) for g in forms if not g.is_zero]
    for lead, start, stop in chart_blocks(field.q, nvars):
        pts = _chart_block(field, nvars, lead, start, stop)
        mask = np.ones(pts.shape[1], dtype=bool)
        for cf in cfs:
            mask &= evaluate_block(cf, pts) == 0
        hits = np.nonzero(mask)[0]
        if hits.size:
            return tuple(int(x) for x in pts[:, hits[0]])
    return None


def extension_of(base: FieldSpec, degree: int) -> FieldSpec:
    """F_{q^degree} for q = |base|, built independently with its own modulus."""
    return base if degree == 1 else build_extension(base.p, base.k * degree)
