"""Exact terminal distributions and the quantities defined on them.

Probability mass is pushed forward through the state DAG in size order (valid
because every edge adds a tile), so no linear system is ever solved for
bounded systems.  Mass reaching a truncated node is accumulated exactly as
escaped mass, which turns every bounded analysis of an unbounded system into
a sound interval statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..concentration import Concentrations, frontier_weight, weights_at
from ..core import Assembly
from ..errors import PartitionError
from .statespace import StateGraph


@dataclass(frozen=True)
class Rule:
    """One labeling rule: outcome wins if the predicate matches the terminal."""

    outcome: str
    contains_label: str | None = None
    at: tuple[int, int, str] | None = None

    def __post_init__(self):
        if (self.contains_label is None) == (self.at is None):
            raise PartitionError("rule needs exactly one of contains_label / at")

    def matches(self, assembly: Assembly) -> bool:
        if self.contains_label is not None:
            return any(t.name == self.contains_label for _, t in assembly.items())
        x, y, label = self.at
        tile = assembly.tile_at((x, y))
        return tile is not None and tile.name == label


@dataclass(frozen=True)
class PartitionSpec:
    """Ordered outcome-labeling rules; must label every terminal exactly once.

    Several rules may share an outcome label (disjunction); a terminal
    matching two distinct labels is an error, as is one matching none.
    """

    rules: tuple[Rule, ...]

    def outcomes(self) -> list[str]:
        seen: list[str] = []
        for r in self.rules:
            if r.outcome not in seen:
                seen.append(r.outcome)
        return seen

    def label(self, assembly: Assembly) -> str:
        labels = {r.outcome for r in self.rules if r.matches(assembly)}
        if not labels:
            raise PartitionError(f"terminal assembly matched no partition rule: {assembly.key}")
        if len(labels) > 1:
            raise PartitionError(
                f"terminal assembly matched outcomes {sorted(labels)}: {assembly.key}"
            )
        return labels.pop()


@dataclass
class DistributionReport:
    """Exact mass per terminal assembly plus the mass that escaped truncation.

    Masses and escaped mass always sum to exactly 1.
    """

    graph: StateGraph
    terminal_masses: dict[tuple, Fraction]
    escaped_mass: Fraction

    def mass_of(self, assembly: Assembly) -> Fraction:
        return self.terminal_masses.get(assembly.key, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.terminal_masses.values(), Fraction(0)) + self.escaped_mass

    def interval_for(self, key: tuple) -> tuple[Fraction, Fraction]:
        m = self.terminal_masses.get(key, Fraction(0))
        return (m, m + self.escaped_mass)


@dataclass
class BiasReport:
    """Outcome masses and the induced bias, interval-widened under truncation.

    The bias of a labeled distribution is half the largest pairwise absolute
    difference of outcome masses.  With escaped mass e the reported interval
    [max(0, b - e), b + e] brackets every completion of the truncated run.
    """

    outcome_masses: dict[str, Fraction]
    escaped_mass: Fraction
    bias_lower: Fraction
    bias_upper: Fraction

    @property
    def exact(self) -> bool:
        return self.escaped_mass == 0

    @property
    def bias(self) -> Fraction:
        if not self.exact:
            raise PartitionError("bias is an interval under truncation; use bias_lower/upper")
        return self.bias_upper

    def outcome_intervals(self) -> dict[str, tuple[Fraction, Fraction]]:
        return {
            o: (m, m + self.escaped_mass) for o, m in sorted(self.outcome_masses.items())
        }


def terminal_distribution(graph: StateGraph, conc: Concentrations) -> DistributionReport:
    """Forward mass propagation over the explored DAG.

    Edge probability is the attaching type's weight over the full frontier
    weight of the source node; with an unstable schedule the weight map is the
    one in force at the source's size.
    """
    conc.covers(graph.system)
    masses = [Fraction(0)] * len(graph.nodes)
    masses[0] = Fraction(1)
    terminal_masses: dict[tuple, Fraction] = {}
    escaped = Fraction(0)
    for node in graph.in_size_order():
        mass = masses[node.index]
        if mass == 0:
            continue
        if node.is_terminal:
            key = node.assembly.key
            terminal_masses[key] = terminal_masses.get(key, Fraction(0)) + mass
            continue
        if node.truncated:
            escaped += mass
            continue
        weights = weights_at(conc, node.size)
        denom = frontier_weight(weights, node.frontier)
        for child_index, tile_name, _pos in node.edges:
            masses[child_index] += mass * weights[tile_name] / denom
    report = DistributionReport(graph, terminal_masses, escaped)
    assert report.total() == 1, "probability mass must be conserved exactly"
    return report


def partition_masses(report: DistributionReport, partition: PartitionSpec) -> BiasReport:
    """Label every terminal and fold masses into outcomes (exact, or interval)."""
    outcome_masses: dict[str, Fraction] = {o: Fraction(0) for o in partition.outcomes()}
    for node in report.graph.terminals():
        label = partition.label(node.assembly)
        outcome_masses[label] += report.mass_of(node.assembly)
    values = list(outcome_masses.values())
    spread = Fraction(0)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            spread = max(spread, abs(values[i] - values[j]))
    point = spread / 2
    e = report.escaped_mass
    return BiasReport(
        outcome_masses=outcome_masses,
        escaped_mass=e,
        bias_lower=max(Fraction(0), point - e),
        bias_upper=point + e,
    )


def expected_space(graph: StateGraph, conc: Concentrations):
    """Sum of |terminal| weighted by its probability.

    Exact Fraction without truncation.  With truncation, an interval
    (lower, upper): the known terminal contribution, plus between 0 and
    max_space per unit of escaped mass.
    """
    report = terminal_distribution(graph, conc)
    base = Fraction(0)
    for node in graph.terminals():
        base += len(node.assembly) * report.mass_of(node.assembly)
    if report.escaped_mass == 0:
        return base
    return (base, base + report.escaped_mass * graph.max_space)


@dataclass(frozen=True)
class ExtensibilityReport:
    value: int
    exact: bool  # False when the graph was truncated: the value is a lower bound.


def extensibility(graph: StateGraph) -> ExtensibilityReport:
    """Largest number of distinct attachable positions over explored assemblies."""
    best = 0
    for node in graph.nodes:
        positions = {pos for _, pos in node.frontier}
        best = max(best, len(positions))
    return ExtensibilityReport(value=best, exact=not graph.has_truncation)
