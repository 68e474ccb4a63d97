"""Ratio greedy with first-reject bookkeeping and the profit upper bound.

The greedy pass fills the knapsack in profit/weight order and keeps going
after the first object that does not fit, so lighter objects later in the
order can still be added. At the first reject the running totals give the
instance-wide upper bound ``pmax = S + (c - W) * p_r / w_r``; any solver
returning profit ``S`` is then within ``(pmax - S) / pmax`` of optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import Instance, Selection, sort_by_ratio


@dataclass(frozen=True)
class GreedyReport:
    """Result of :func:`greedy_plus`.

    ``S``/``W`` are the final greedy sums; ``S_at_reject``/``W_at_reject``
    are the totals when the first reject happened, which is where ``pmax``
    and ``gefr`` are evaluated. ``r`` is the original 1-based index of the
    first rejected item and ``r_rank`` its 1-based position in ratio order;
    both are ``None`` when every item fits.
    """

    selection: Selection
    S: float
    W: float
    r: Optional[int]
    r_rank: Optional[int]
    S_at_reject: float
    W_at_reject: float
    pmax: float
    gefr: float

    @property
    def k(self) -> int:
        return self.selection.k

    @property
    def added_after_reject(self) -> int:
        """How many items were added after the first reject."""
        if self.r_rank is None:
            return 0
        return self.k - (self.r_rank - 1)

    @property
    def e(self) -> float:
        return certified_error(self.pmax, self.S)


def certified_error(pmax: float, S: float) -> float:
    """Maximum fractional error ``(pmax - S) / pmax`` of a solution worth ``S``.

    Defined as 0 when ``pmax`` is 0 (every profit is zero).
    """
    if pmax == 0:
        return 0.0
    return (pmax - S) / pmax


def greedy_plus(inst: Instance, order: Optional[np.ndarray] = None, backend=None) -> GreedyReport:
    if order is None:
        order = sort_by_ratio(inst)
    kern = backend or kernels.active
    pos = np.asarray(order, dtype=np.int64) - 1
    p = inst.profits[pos]
    w = inst.weights[pos]
    c = inst.capacity
    taken, S, W, r, S_r, W_r = kern.greedy_fill(p, w, c)
    if r == 0:
        pmax = S
        gefr = 0.0
        r_item = r_rank = None
        S_r, W_r = S, W
    else:
        fill = (c - W_r) * (p[r - 1] / w[r - 1])
        pmax = S_r + fill
        gefr = fill / pmax if pmax > 0 else 0.0
        r_rank = int(r)
        r_item = int(order[r - 1])
    chosen = tuple(np.sort(np.asarray(order)[taken.astype(bool)]).tolist())
    sel = Selection(chosen, float(S), float(W))
    return GreedyReport(sel, float(S), float(W), r_item, r_rank, float(S_r), float(W_r),
                        float(pmax), float(gefr))
