"""Shared result types for the construction builders."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..analysis.distribution import PartitionSpec
from ..core import Assembly, TileSystem


@dataclass
class BuiltSystem:
    """A constructed tile system bundled with its outcome partition and claims.

    The metadata dict carries the properties the construction claims
    (extensibility, space, bias bound, tile-count bound, parameters); the test
    suite verifies every claim against the built artifact rather than
    trusting it.
    """

    system: TileSystem
    partition: PartitionSpec
    name: str
    metadata: dict[str, Any] = field(default_factory=dict)

    def __repr__(self) -> str:
        return f"BuiltSystem({self.name}, |T|={len(self.system.tiles)})"


@dataclass(frozen=True)
class ContractEdge:
    """One transition of a chain contract.

    The probability of the transition is weight(tile) / sum over the state's
    full candidate multiset, so `tile` names the attaching type and the
    denominators come from the per-state candidate lists.
    """

    source: str
    target: str
    tile: str


@dataclass
class ChainContract:
    """Expected quotient chain of a gadget's state graph.

    states: all contract state names; edges: labeled transitions; candidates:
    for each non-terminal state, the full multiset of tile names attachable
    (the denominator of every transition probability out of that state).
    """

    states: tuple[str, ...]
    edges: tuple[ContractEdge, ...]
    candidates: dict[str, tuple[str, ...]]

    def check_consistent(self) -> None:
        """Each state's outgoing edge tiles must exactly use its candidate multiset."""
        for state in self.states:
            out = sorted(e.tile for e in self.edges if e.source == state)
            cand = sorted(self.candidates.get(state, ()))
            if out != cand:
                raise ValueError(
                    f"contract state {state!r}: edges use {out} but candidates are {cand}"
                )


def verify_chain_contract(
    graph,
    contract: ChainContract,
    label: "callable",
) -> list[str]:
    """Check that the explored graph realizes the contract under `label`.

    label maps an assembly to a contract state name, or None for bookkeeping
    states outside the contract (deterministic prefix; post-decision filler).
    Edges between two labeled states must match the contract's tile labels,
    and each labeled state's frontier must present exactly the contract's
    candidate multiset (ignoring moves that do not change the label, which
    are outcome-neutral filler).  Returns a list of discrepancies.
    """
    problems: list[str] = []
    seen_edges: set[tuple[str, str, str]] = set()
    for node in graph.nodes:
        src = label(node.assembly)
        if src is None:
            continue
        if src not in contract.states:
            problems.append(f"unknown contract state {src!r}")
            continue
        moved: list[tuple[str, str]] = []
        for child_index, tile_name, _pos in node.edges:
            dst = label(graph.nodes[child_index].assembly)
            if dst == src or dst is None:
                continue
            moved.append((dst, tile_name))
            seen_edges.add((src, dst, tile_name))
        expected = sorted(
            (e.target, e.tile) for e in contract.edges if e.source == src
        )
        if moved and sorted(moved) != expected:
            problems.append(
                f"state {src!r}: observed transitions {sorted(moved)} != contract {expected}"
            )
    for e in contract.edges:
        if (e.source, e.target, e.tile) not in seen_edges:
            problems.append(f"contract edge {e.source}->{e.target} [{e.tile}] never realized")
    return problems
