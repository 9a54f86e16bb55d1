"""Random task-to-machine assignment and imbalance metrics.

Assignment is oblivious: machines are drawn from task indices alone, never
from durations (durations are unknown when scheduling). Loads are kept in
exact arithmetic so conservation holds to the last bit; float durations are
converted to the exact rational they denote.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .rng import BitStream


@dataclass(frozen=True)
class Assignment:
    machines: int
    machine_of: tuple[int, ...]
    loads: tuple[Fraction, ...]

    @property
    def total_load(self) -> Fraction:
        return sum(self.loads, Fraction(0))


@dataclass(frozen=True)
class ImbalanceStats:
    max_load: Fraction
    mean_load: Fraction
    ratio: Optional[Fraction]  # None when every load is zero


def _exact(d) -> Fraction | int:
    value = d if isinstance(d, int) else Fraction(d)
    if value < 0:
        raise ValueError(f"durations must be nonnegative, got {d}")
    return value


def assign_random(
    durations: Sequence, machines: int, rng: BitStream | None = None
) -> Assignment:
    """Assign each task independently to a uniformly random machine."""
    if machines < 1:
        raise ValueError("need at least one machine")
    exact = [_exact(d) for d in durations]
    if rng is None:
        rng = BitStream()
    if exact:
        choice = rng.integers(0, machines, size=len(exact))
    else:
        choice = []
    loads: list = [0] * machines
    for idx, d in zip(choice, exact):
        loads[idx] += d
    return Assignment(
        machines=machines,
        machine_of=tuple(int(i) for i in choice),
        loads=tuple(Fraction(l) for l in loads),
    )


def imbalance(a: Assignment) -> ImbalanceStats:
    """Exact max load, mean load, and their ratio."""
    total = a.total_load
    mean = total / a.machines
    max_load = max(a.loads)
    ratio = None if total == 0 else max_load / mean
    return ImbalanceStats(max_load=max_load, mean_load=mean, ratio=ratio)


def ratio_trials(
    tasks: int, machines: int, runs: int, rng: BitStream | None = None
) -> list[Fraction]:
    """max/mean ratios over repeated runs with unit-duration tasks."""
    if rng is None:
        rng = BitStream()
    out = []
    for _ in range(runs):
        stats = imbalance(assign_random([1] * tasks, machines, rng))
        if stats.ratio is None:
            raise AssertionError("unit tasks cannot produce zero total load")
        out.append(stats.ratio)
    return out
