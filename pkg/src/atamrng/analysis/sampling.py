"""Seeded Monte Carlo simulation of the attachment chain.

Each trial samples frontier attachments with probability proportional to tile
weight (schedule-aware) until the assembly is terminal or a step budget runs
out.  Trial i draws from substream(seed, i), so results are a pure function
of (inputs, seed) no matter how trials are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..concentration import Concentrations, weights_at
from ..core import TileSystem, frontier, frontier_update
from ..rng import SplitMix64, substream
from .distribution import PartitionSpec


def weighted_index(stream: SplitMix64, weights: list[Fraction]) -> int:
    """Pick an index proportionally to exact rational weights."""
    scale = math.lcm(*(w.denominator for w in weights))
    ints = [int(w * scale) for w in weights]
    total = sum(ints)
    u = stream.below(total)
    acc = 0
    for i, w in enumerate(ints):
        acc += w
        if u < acc:
            return i
    return len(ints) - 1


@dataclass
class MonteCarloReport:
    trials: int
    counts: dict[str, int]
    truncated_paths: int

    def frequency(self, outcome: str) -> float:
        return self.counts.get(outcome, 0) / self.trials


def monte_carlo(
    system: TileSystem,
    conc: Concentrations,
    trials: int,
    rng_seed: int,
    max_steps: int,
    partition: PartitionSpec | None = None,
) -> MonteCarloReport:
    """Empirical outcome counts over seeded independent trials.

    Terminal assemblies are tallied under their partition label when a
    partition is given, otherwise under a stable key of their placements.
    Paths still growing after max_steps count as truncated.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    conc.covers(system)
    counts: dict[str, int] = {}
    truncated = 0
    seed_frontier = frontier(system, system.seed)
    for trial in range(trials):
        stream = substream(rng_seed, trial)
        assembly = system.seed
        entries = seed_frontier
        steps = 0
        while entries and steps < max_steps:
            weights = weights_at(conc, len(assembly))
            pick = weighted_index(stream, [weights[t.name] for t, _ in entries])
            tile, pos = entries[pick]
            assembly = assembly.with_tile(pos, tile)
            entries = frontier_update(system, assembly, entries, pos)
            steps += 1
        if entries:
            truncated += 1
            continue
        label = partition.label(assembly) if partition else str(assembly.key)
        counts[label] = counts.get(label, 0) + 1
    return MonteCarloReport(trials=trials, counts=counts, truncated_paths=truncated)
