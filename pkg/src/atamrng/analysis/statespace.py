"""Breadth-first closure of the producible assemblies, up to a space bound.

Growth is monotone (every step adds one tile), so the reachable state graph
is a DAG graded by assembly size and can be explored layer by layer.  Nodes
at the bound whose frontier is non-empty are flagged truncated; their
probability mass is later reported as escaped rather than silently dropped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..core import (
    Assembly,
    Position,
    TileSystem,
    TileType,
    frontier,
    frontier_update,
)
from ..errors import ResourceBoundError, TruncationError

MAX_STATES_ENV = "ATAMRNG_MAX_STATES"
DEFAULT_MAX_STATES = 1_000_000


def _state_cap() -> int:
    raw = os.environ.get(MAX_STATES_ENV)
    if raw is None:
        return DEFAULT_MAX_STATES
    try:
        cap = int(raw)
    except ValueError:
        raise ResourceBoundError(f"{MAX_STATES_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ResourceBoundError(f"{MAX_STATES_ENV} must be positive, got {cap}")
    return cap


@dataclass
class Node:
    index: int
    assembly: Assembly
    size: int
    frontier: list[tuple[TileType, Position]]
    is_terminal: bool
    truncated: bool
    edges: list[tuple[int, str, Position]] = field(default_factory=list)


class StateGraph:
    """Explored producible assemblies with single-attachment transition edges."""

    def __init__(self, system: TileSystem, nodes: list[Node], max_space: int, truncated: bool):
        self.system = system
        self.nodes = nodes
        self.max_space = max_space
        self.has_truncation = truncated
        self._by_key = {n.assembly.key: n.index for n in nodes}

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root(self) -> Node:
        return self.nodes[0]

    def node_for(self, assembly: Assembly) -> Node:
        return self.nodes[self._by_key[assembly.key]]

    def terminals(self) -> list[Node]:
        return [n for n in self.nodes if n.is_terminal]

    def truncated_nodes(self) -> list[Node]:
        return [n for n in self.nodes if n.truncated]

    def in_size_order(self) -> Iterator[Node]:
        # Discovery is breadth-first by size, so node order is already graded.
        return iter(self.nodes)


def explore(
    system: TileSystem,
    max_space: int,
    allow_truncation: bool = False,
    stop_expanding: Callable[[Assembly], bool] | None = None,
) -> StateGraph:
    """All producible assemblies of at most max_space tiles.

    When a node at the bound could still grow, either flag it truncated
    (allow_truncation) or fail with TruncationError.  `stop_expanding` lets a
    caller truncate on a structural condition (e.g. a round count) instead of
    size alone; such nodes are flagged truncated without error.

    Node and edge ordering is deterministic: discovery order with sorted
    frontiers.
    """
    if max_space < len(system.seed):
        raise TruncationError(
            f"max_space {max_space} is below the seed size {len(system.seed)}"
        )
    cap = _state_cap()
    nodes: list[Node] = []
    by_key: dict[tuple, int] = {}

    def add_node(assembly: Assembly, entries: list[tuple[TileType, Position]]) -> Node:
        if len(nodes) >= cap:
            raise ResourceBoundError(
                f"state count exceeded {MAX_STATES_ENV}={cap} during exploration"
            )
        node = Node(
            index=len(nodes),
            assembly=assembly,
            size=len(assembly),
            frontier=entries,
            is_terminal=not entries,
            truncated=False,
        )
        nodes.append(node)
        by_key[assembly.key] = node.index
        return node

    root = add_node(system.seed, frontier(system, system.seed))
    queue = [root.index]
    head = 0
    truncated_any = False
    while head < len(queue):
        node = nodes[queue[head]]
        head += 1
        if node.is_terminal:
            continue
        if stop_expanding is not None and stop_expanding(node.assembly):
            # Structural truncation (e.g. round count) is always quiet.
            node.truncated = True
            truncated_any = True
            continue
        if node.size >= max_space:
            if not allow_truncation:
                raise TruncationError(
                    f"assembly of size {node.size} still grows at the bound {max_space}"
                )
            node.truncated = True
            truncated_any = True
            continue
        for tile, pos in node.frontier:
            child_assembly = node.assembly.with_tile(pos, tile)
            child_index = by_key.get(child_assembly.key)
            if child_index is None:
                entries = frontier_update(system, child_assembly, node.frontier, pos)
                child = add_node(child_assembly, entries)
                child_index = child.index
                queue.append(child_index)
            node.edges.append((child_index, tile.name, pos))
    return StateGraph(system, nodes, max_space, truncated_any)
