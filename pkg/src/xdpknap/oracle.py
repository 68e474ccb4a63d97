"""Exact solvers, used only to validate bounds and errors on small instances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Instance, Selection

EXHAUSTIVE_MAX_N = 25
MITM_MAX_N = 40


class OracleLimitError(ValueError):
    """The instance is too large for the requested exact method."""


@dataclass(frozen=True)
class ExactResult:
    optimum: float
    selection: Selection
    method: str


def _subset_sums(p: np.ndarray, w: np.ndarray):
    # Entry m of the output is the subset whose bit t is set iff item t is in it.
    P = np.zeros(1)
    W = np.zeros(1)
    for pi, wi in zip(p, w):
        P = np.concatenate((P, P + pi))
        W = np.concatenate((W, W + wi))
    return P, W


def _mask_items(mask: int, offset: int = 0) -> list[int]:
    out = []
    t = 0
    while mask:
        if mask & 1:
            out.append(offset + t + 1)
        mask >>= 1
        t += 1
    return out


def exact_exhaustive(inst: Instance) -> ExactResult:
    """Best feasible subset by enumerating all ``2**n`` of them.

    Ties go to the lowest subset mask (bit ``t`` = item ``t + 1``).
    """
    if inst.n > EXHAUSTIVE_MAX_N:
        raise OracleLimitError(f"exhaustive oracle refuses n={inst.n} > {EXHAUSTIVE_MAX_N}")
    P, W = _subset_sums(inst.profits, inst.weights)
    P[W > inst.capacity] = -1.0
    m = int(np.argmax(P))
    sel = Selection.from_indices(inst, _mask_items(m))
    return ExactResult(sel.profit_sum, sel, "exhaustive")


def _pareto(P: np.ndarray, W: np.ndarray):
    """Sort by weight and drop subsets that a lighter-or-equal one beats."""
    idx = np.lexsort((-P, W))
    Ps, Ws = P[idx], W[idx]
    prior_best = np.maximum.accumulate(np.concatenate(([-np.inf], Ps[:-1])))
    keep = Ps > prior_best
    return Ps[keep], Ws[keep], idx[keep]


def exact_mitm(inst: Instance) -> ExactResult:
    """Best feasible subset by meet-in-the-middle over two item halves."""
    if inst.n > MITM_MAX_N:
        raise OracleLimitError(f"meet-in-the-middle oracle refuses n={inst.n} > {MITM_MAX_N}")
    c = inst.capacity
    h = inst.n // 2
    PA, WA = _subset_sums(inst.profits[:h], inst.weights[:h])
    PB, WB = _subset_sums(inst.profits[h:], inst.weights[h:])
    PB, WB, maskB = _pareto(PB, WB)

    fits = WA <= c
    a_idx = np.flatnonzero(fits)
    j = np.searchsorted(WB, c - WA[a_idx], side="right") - 1
    # c - wa <= wb does not imply wa + wb <= c in floating point; step down
    # on the rare pairs that overshoot.
    while True:
        bad = (j >= 0) & (WA[a_idx] + WB[np.maximum(j, 0)] > c)
        if not bad.any():
            break
        j[bad] -= 1
    ok = j >= 0  # PB/WB always contain the empty subset, so this is all of them
    a_idx, j = a_idx[ok], j[ok]
    totals = PA[a_idx] + PB[j]
    best = int(np.argmax(totals))
    items = _mask_items(int(a_idx[best])) + _mask_items(int(maskB[j[best]]), offset=h)
    sel = Selection.from_indices(inst, items)
    return ExactResult(sel.profit_sum, sel, "mitm")


def exact_solve(inst: Instance) -> ExactResult:
    """Pick the cheapest exact method for ``inst.n``; refuse beyond the MITM limit."""
    if inst.n <= 20:
        return exact_exhaustive(inst)
    return exact_mitm(inst)
