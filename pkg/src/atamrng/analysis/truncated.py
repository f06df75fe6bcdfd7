"""Round-bounded exact analysis of restarting (unbounded) systems.

Systems built around a restart loop mark the tile type that begins each new
round.  Exploration is cut at assemblies that have restarted k times; the
mass reaching them is exactly the probability of k consecutive failed rounds
and is reported as the residual, while the per-outcome masses are exact lower
bounds that hold at every truncation depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..concentration import Concentrations
from ..core import TileSystem
from ..errors import AtamError
from .distribution import PartitionSpec, partition_masses, terminal_distribution
from .statespace import explore


@dataclass
class TruncatedReport:
    outcome_lower_bounds: dict[str, Fraction]
    residual: Fraction
    rounds: int

    def outcome_intervals(self) -> dict[str, tuple[Fraction, Fraction]]:
        return {
            o: (m, m + self.residual) for o, m in sorted(self.outcome_lower_bounds.items())
        }


def truncated_partition_masses(
    system: TileSystem,
    partition: PartitionSpec,
    conc: Concentrations,
    rounds: int,
    restart_tile: str,
    max_space: int,
) -> TruncatedReport:
    """Explore exactly `rounds` rounds of a restarting system.

    A node is truncated once its assembly contains `rounds` copies of the
    restart tile (it has failed that many rounds and would begin another).
    max_space must be generous enough to hold `rounds` full rounds; hitting it
    earlier is an error rather than a silent truncation.
    """
    if rounds < 1:
        raise AtamError("rounds must be at least 1")
    if restart_tile not in system.tiles:
        raise AtamError(f"restart tile {restart_tile!r} is not in the tile set")

    graph = explore(
        system,
        max_space,
        allow_truncation=False,
        stop_expanding=lambda a: a.count_type(restart_tile) >= rounds,
    )
    report = terminal_distribution(graph, conc)
    bias = partition_masses(report, partition)
    return TruncatedReport(
        outcome_lower_bounds=bias.outcome_masses,
        residual=report.escaped_mass,
        rounds=rounds,
    )
