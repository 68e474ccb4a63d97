"""Problem and solution data model shared by every solver.

Item indices are 1-based throughout: index 0 is reserved as the
"start of subset" sentinel used by the bin table and backtracking.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

SUM_RTOL = 1e-9


class InstanceError(ValueError):
    """Raised for malformed instance data."""


class SelectionError(ValueError):
    """Raised for structurally invalid selections (bad or repeated indices)."""


class Item(NamedTuple):
    profit: float
    weight: float


def _frozen(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InstanceError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    """A 0/1 knapsack instance: ``n`` items and a capacity.

    Profits and weights are stored as read-only float64 arrays. Weights
    must be strictly positive and profits nonnegative. The capacity may be
    below every weight; solvers then return the empty selection.
    """

    profits: np.ndarray
    weights: np.ndarray
    capacity: float

    def __post_init__(self):
        p = _frozen(self.profits, "profits")
        w = _frozen(self.weights, "weights")
        if p.shape != w.shape:
            raise InstanceError(f"{p.size} profits but {w.size} weights")
        if p.size == 0:
            raise InstanceError("an instance needs at least one item")
        if np.any(w <= 0):
            bad = int(np.argmax(w <= 0)) + 1
            raise InstanceError(f"item {bad} has nonpositive weight {w[bad - 1]!r}")
        if np.any(p < 0):
            bad = int(np.argmax(p < 0)) + 1
            raise InstanceError(f"item {bad} has negative profit {p[bad - 1]!r}")
        c = float(self.capacity)
        if not (math.isfinite(c) and c > 0):
            raise InstanceError(f"capacity must be positive and finite, got {self.capacity!r}")
        object.__setattr__(self, "profits", p)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "capacity", c)

    @classmethod
    def from_items(cls, items: Iterable[Sequence[float]], capacity: float) -> "Instance":
        pairs = [tuple(it) for it in items]
        if any(len(pw) != 2 for pw in pairs):
            raise InstanceError("items must be (profit, weight) pairs")
        p = [pw[0] for pw in pairs]
        w = [pw[1] for pw in pairs]
        return cls(p, w, capacity)

    @property
    def n(self) -> int:
        return int(self.profits.size)

    @property
    def items(self) -> list[Item]:
        return [Item(float(p), float(w)) for p, w in zip(self.profits, self.weights)]

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.capacity == other.capacity
            and np.array_equal(self.profits, other.profits)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None

    # JSON interchange: {"capacity": c, "items": [[p, w], ...]}. repr() of a
    # Python float is the shortest string that round-trips, so values survive
    # exactly.
    def to_json(self) -> str:
        doc = {
            "capacity": self.capacity,
            "items": [[float(p), float(w)] for p, w in zip(self.profits, self.weights)],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "capacity" not in doc or "items" not in doc:
            raise InstanceError('expected an object with "capacity" and "items"')
        return cls.from_items(doc["items"], doc["capacity"])

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "Instance":
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class Selection:
    """A chosen subset of item indices (1-based) with its stored sums."""

    chosen: tuple[int, ...]
    profit_sum: float
    weight_sum: float

    @classmethod
    def empty(cls) -> "Selection":
        return cls((), 0.0, 0.0)

    @classmethod
    def from_indices(cls, inst: Instance, indices: Iterable[int]) -> "Selection":
        """Build a selection and compute its sums from the item data."""
        idx = np.sort(np.fromiter(indices, dtype=np.int64)) - 1
        chosen = tuple((idx + 1).tolist())
        return cls(chosen, math.fsum(inst.profits[idx]), math.fsum(inst.weights[idx]))

    @property
    def k(self) -> int:
        return len(self.chosen)

    def mask(self, n: int) -> np.ndarray:
        x = np.zeros(n, dtype=np.uint8)
        if self.chosen:
            x[np.asarray(self.chosen) - 1] = 1
        return x


@dataclass(frozen=True)
class ValidationResult:
    feasible: bool
    profit_sum: float
    weight_sum: float
    sums_consistent: bool
    messages: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.feasible and self.sums_consistent


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b)) or a == b


def validate_selection(inst: Instance, sel: Selection, rtol: float = SUM_RTOL) -> ValidationResult:
    """Recompute a selection's sums from scratch and check it against ``inst``.

    Raises :class:`SelectionError` for out-of-range or duplicate indices.
    """
    seen = set()
    for i in sel.chosen:
        if not 1 <= i <= inst.n:
            raise SelectionError(f"item index {i} outside 1..{inst.n}")
        if i in seen:
            raise SelectionError(f"item index {i} chosen twice")
        seen.add(i)
    idx = np.fromiter(sel.chosen, dtype=np.int64, count=len(sel.chosen)) - 1
    profit = math.fsum(inst.profits[idx])
    weight = math.fsum(inst.weights[idx])
    messages = []
    consistent = True
    if not _close(profit, sel.profit_sum, rtol):
        consistent = False
        messages.append(f"stored profit {sel.profit_sum!r} != recomputed {profit!r}")
    if not _close(weight, sel.weight_sum, rtol):
        consistent = False
        messages.append(f"stored weight {sel.weight_sum!r} != recomputed {weight!r}")
    feasible = weight <= inst.capacity
    if not feasible:
        messages.append(f"weight {weight!r} exceeds capacity {inst.capacity!r}")
    return ValidationResult(feasible, profit, weight, consistent, tuple(messages))


def sort_by_ratio(inst: Instance) -> np.ndarray:
    """Return the 1-based item order by profit/weight, high to low.

    Ties keep their original index order so the permutation is
    deterministic.
    """
    ratio = inst.profits / inst.weights
    return np.argsort(-ratio, kind="stable").astype(np.int64) + 1
