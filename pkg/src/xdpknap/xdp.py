"""XDP: a dynamic program over ``T = g ln n`` weight bins.

Each bin keeps the most profitable subset found so far whose exact weight
maps onto it (``floor(weight * T / c)``). Objects are taken in ratio order
and every nonempty bin is extended by each object, bins visited high to
low; updates land in place, so a bin can be replaced while the same
object's pass is still running. Predecessor links recorded on every update
let the winning subset be rebuilt afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import Instance, Selection, sort_by_ratio
from .greedy import GreedyReport, certified_error, greedy_plus

DEFAULT_G = 12.0


class BacktrackError(RuntimeError):
    """The predecessor links do not describe a valid subset."""


def bin_count(n: int, g: float = DEFAULT_G) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(1, int(math.floor(g * math.log(n))))


def bin_index(b: float, c: float, T: int) -> int:
    """Bin holding a subset of weight ``b``: ``floor(b * T / c)``, capped at ``T``."""
    if b < 0 or b > c:
        raise ValueError(f"subset weight {b!r} outside [0, {c!r}]")
    return kernels.active.bin_index(b, c, T)


@dataclass(frozen=True, eq=False)
class BinTable:
    """Final bin state of one XDP run.

    ``XO[j]`` is the last object number added to bin ``j`` (-1 empty,
    0 the empty-subset seed). Object numbers are 1-based positions in
    ``order``. ``back[i, j]`` is the predecessor object of object ``i`` in
    bin ``j`` and ``backbin[i, j]`` the bin that predecessor subset sat in.
    """

    T: int
    capacity: float
    XP: np.ndarray
    XW: np.ndarray
    XO: np.ndarray
    back: np.ndarray
    backbin: np.ndarray
    order: np.ndarray

    def nonempty(self) -> np.ndarray:
        return np.flatnonzero(self.XO >= 0)

    def chain(self, j: int, backend=None) -> np.ndarray:
        """Object numbers in bin ``j``'s subset, strictly decreasing."""
        kern = backend or kernels.active
        try:
            return kern.backtrack_chain(self.XO, self.back, self.backbin, int(j))
        except RuntimeError as exc:
            raise BacktrackError(str(exc)) from exc

    def items_in(self, j: int) -> np.ndarray:
        """Original 1-based item indices of bin ``j``'s subset."""
        return self.order[self.chain(j) - 1]


@dataclass(frozen=True)
class XdpSolution:
    selection: Selection
    S: float
    bestbin: int
    e: float
    pmax: float
    T: int
    greedy: GreedyReport
    table: Optional[BinTable] = None


def _recompute_chain(table: BinTable, bestbin: int, w_sorted: np.ndarray) -> np.ndarray:
    # Literal reading: the source bin is recovered from the running weight
    # rather than read from backbin. Float cancellation can pick the wrong
    # bin, in which case the walk follows unrelated links.
    chain = []
    b = float(table.XW[bestbin])
    i = int(table.XO[bestbin])
    k = bestbin
    prev = table.back.shape[0]
    while i > 0:
        if i >= prev:
            raise BacktrackError(f"recomputed walk not decreasing at object {i}")
        chain.append(i)
        prev = i
        b -= float(w_sorted[i - 1])
        i = int(table.back[i, k])
        k = kernels.active.bin_index(max(b, 0.0), table.capacity, table.T)
    return np.array(chain, dtype=np.int64)


def xdp_solve(
    inst: Instance,
    order: Optional[np.ndarray] = None,
    g: float = DEFAULT_G,
    *,
    T: Optional[int] = None,
    greedy: Optional[GreedyReport] = None,
    recompute_bins: bool = False,
    keep_table: bool = False,
    backend=None,
) -> XdpSolution:
    """Solve ``inst`` approximately and certify the result.

    ``T`` overrides the bin count derived from ``g``. The certificate uses
    the greedy bound of the same instance; pass ``greedy`` to reuse a
    report already computed on ``order``. With ``recompute_bins`` the
    backtrack recovers source bins from subtracted weights instead of the
    stored links, and the returned selection's sums are recomputed from
    the item data (they may then disagree with ``S``).
    """
    if order is None:
        order = sort_by_ratio(inst)
    order = np.asarray(order, dtype=np.int64)
    kern = backend or kernels.active
    if T is None:
        T = bin_count(inst.n, g)
    T = int(T)
    if T < 1:
        raise ValueError("T must be >= 1")
    if greedy is None:
        greedy = greedy_plus(inst, order, backend=kern)

    pos = order - 1
    p = np.ascontiguousarray(inst.profits[pos])
    w = np.ascontiguousarray(inst.weights[pos])
    XP, XW, XO, back, backbin, S, bestbin = kern.xdp_forward(p, w, inst.capacity, T)
    table = BinTable(T, inst.capacity, XP, XW, XO, back, backbin, order)

    if recompute_bins:
        chain = _recompute_chain(table, bestbin, w)
        selection = Selection.from_indices(inst, order[chain - 1])
    else:
        try:
            chain = kern.backtrack_chain(XO, back, backbin, bestbin)
        except RuntimeError as exc:
            raise BacktrackError(str(exc)) from exc
        chosen = tuple(np.sort(order[chain - 1]).tolist())
        selection = Selection(chosen, float(S), float(XW[bestbin]))

    return XdpSolution(
        selection=selection,
        S=float(S),
        bestbin=int(bestbin),
        e=certified_error(greedy.pmax, float(S)),
        pmax=greedy.pmax,
        T=T,
        greedy=greedy,
        table=table if keep_table else None,
    )


def backtrack(table: BinTable, bestbin: int, inst: Instance) -> Selection:
    """Rebuild the subset stored in ``bestbin`` as a selection of ``inst``."""
    if table.XO[bestbin] < 0:
        raise ValueError(f"bin {bestbin} is empty")
    return Selection.from_indices(inst, table.items_in(bestbin))
