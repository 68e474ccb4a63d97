"""Reader for Jooken-style hard instance files and their recorded optima.

Instance file layout (whitespace separated integers)::

    n
    1 p_1 w_1
    ...
    n p_n w_n
    c

The recorded optimum is looked up, in order, from

1. ``<file>.opt`` next to the instance,
2. ``outp.out`` in the instance's directory (the published dataset layout),
3. ``optima.json`` in the instance's directory, mapping file name to value.

A solution file's first token is the optimal profit. If it is followed by
exactly ``n`` 0/1 tokens they are read as the optimal selection vector.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .core import Instance

MAX_EXACT_INT = 2**53


class ParseError(ValueError):
    """Malformed instance or solution file."""


class MissingOptimumError(ParseError):
    """No recorded optimum was found next to an instance file."""


class DataIntegrityWarning(UserWarning):
    """A solver beat the recorded optimum, so the record must be wrong."""


@dataclass(frozen=True)
class HardInstance:
    instance: Instance
    recorded_optimum: float
    source_path: str
    recorded_k: Optional[int] = None


def _int_token(tok: str, path, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: non-integer token {tok!r}") from None
    if abs(v) > MAX_EXACT_INT:
        raise ParseError(f"{path}:{lineno}: {v} is not exactly representable as a double")
    return v


def parse_instance_text(text: str, path="<string>") -> Instance:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(f"{path}:1: empty file")
    head = lines[0].split()
    if len(head) != 1:
        raise ParseError(f"{path}:1: expected the item count alone, got {len(head)} tokens")
    n = _int_token(head[0], path, 1)
    if n < 1:
        raise ParseError(f"{path}:1: item count must be positive, got {n}")
    if len(lines) != n + 2:
        raise ParseError(
            f"{path}:{len(lines)}: declared n={n} needs {n + 2} lines, file has {len(lines)}"
        )
    profits, weights = [], []
    for lineno in range(2, n + 2):
        toks = lines[lineno - 1].split()
        if len(toks) != 3:
            raise ParseError(f"{path}:{lineno}: expected 'index profit weight', got {len(toks)} tokens")
        _, p, w = (_int_token(t, path, lineno) for t in toks)
        profits.append(float(p))
        weights.append(float(w))
    tail = lines[n + 1].split()
    if len(tail) != 1:
        raise ParseError(f"{path}:{n + 2}: expected the capacity alone, got {len(tail)} tokens")
    c = _int_token(tail[0], path, n + 2)
    try:
        return Instance(profits, weights, float(c))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_solution(path: Path, n: int) -> tuple[float, Optional[int]]:
    toks = path.read_text().split()
    if not toks:
        raise ParseError(f"{path}:1: empty solution file")
    try:
        opt = float(toks[0])
    except ValueError:
        raise ParseError(f"{path}:1: optimum {toks[0]!r} is not numeric") from None
    k = None
    rest = toks[1:]
    if len(rest) == n and all(t in ("0", "1") for t in rest):
        k = sum(t == "1" for t in rest)
    return opt, k


def find_optimum(path: Path, n: int) -> tuple[float, Optional[int]]:
    for cand in (path.with_name(path.name + ".opt"), path.with_name("outp.out")):
        if cand.is_file():
            return _parse_solution(cand, n)
    manifest = path.with_name("optima.json")
    if manifest.is_file():
        table = json.loads(manifest.read_text())
        if path.name in table:
            return float(table[path.name]), None
    raise MissingOptimumError(f"{path}: no recorded optimum (.opt, outp.out or optima.json)")


def parse_jooken(path, optimum: Optional[float] = None) -> HardInstance:
    path = Path(path)
    inst = parse_instance_text(path.read_text(), path)
    k = None
    if optimum is None:
        optimum, k = find_optimum(path, inst.n)
    if not optimum > 0:
        raise ParseError(f"{path}: recorded optimum must be positive, got {optimum!r}")
    return HardInstance(inst, float(optimum), str(path), k)


def serialize_instance(inst: Instance) -> str:
    """Write ``inst`` back in the file layout (values must be integral)."""
    rows = [str(inst.n)]
    for i, (p, w) in enumerate(zip(inst.profits, inst.weights), start=1):
        if not (float(p).is_integer() and float(w).is_integer()):
            raise ValueError("the hard-instance layout holds integers only")
        rows.append(f"{i} {int(p)} {int(w)}")
    if not inst.capacity.is_integer():
        raise ValueError("the hard-instance layout holds integers only")
    rows.append(str(int(inst.capacity)))
    return "\n".join(rows) + "\n"


def evaluate_against_optimum(hi: HardInstance, profit: float) -> float:
    """Fractional shortfall of ``profit`` relative to the recorded optimum."""
    if hi.recorded_optimum <= 0:
        raise ValueError(f"{hi.source_path}: recorded optimum {hi.recorded_optimum!r} is not positive")
    if profit < 0:
        raise ValueError("profit must be nonnegative")
    err = (hi.recorded_optimum - profit) / hi.recorded_optimum
    if err < 0:
        warnings.warn(
            f"{hi.source_path}: profit {profit!r} exceeds recorded optimum {hi.recorded_optimum!r}",
            DataIntegrityWarning,
            stacklevel=2,
        )
    return err


def iter_instance_files(root) -> Iterator[Path]:
    """Instance files under ``root``: every ``*.in`` file, in sorted order."""
    yield from sorted(p for p in Path(root).rglob("*.in") if p.is_file())
