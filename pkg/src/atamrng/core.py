"""Tiles, assemblies, and attachment semantics of the square-tile assembly model.

Tiles are unit squares with one optional glue per edge.  An assembly maps
integer positions to tile types; growth happens one tile at a time from a
fixed seed, so positions are absolute and never re-canonicalized by
translation.  A tile may attach where the summed strength of matched abutting
glues reaches the system temperature; an assembly is stable when every cut of
its bond graph reaches the temperature.

All types here are immutable after construction and every operation is a pure
function, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    IllegalAttachmentError,
    InvalidSystemError,
    OccupiedPositionError,
)

Position = tuple[int, int]

# Face index order: north, east, south, west.
FACES = ("north", "east", "south", "west")
_STEPS = ((0, 1), (1, 0), (0, -1), (-1, 0))
_OPPOSITE = (2, 3, 0, 1)


@dataclass(frozen=True)
class Glue:
    label: str
    strength: int

    def __post_init__(self):
        if self.strength < 0:
            raise InvalidSystemError(f"glue {self.label!r} has negative strength")


@dataclass(frozen=True)
class TileType:
    """A named unit square; a missing edge glue bonds nothing (strength 0)."""

    name: str
    north: Glue | None = None
    east: Glue | None = None
    south: Glue | None = None
    west: Glue | None = None

    def glue(self, face: int) -> Glue | None:
        if face == 0:
            return self.north
        if face == 1:
            return self.east
        if face == 2:
            return self.south
        return self.west

    def glues(self) -> Iterator[Glue]:
        for g in (self.north, self.east, self.south, self.west):
            if g is not None:
                yield g


def bond_strength(a: Glue | None, b: Glue | None) -> int:
    """Strength of the bond between two facing edges: equal labels bond, else 0."""
    if a is None or b is None:
        return 0
    if a.label != b.label:
        return 0
    return a.strength


class Assembly:
    """An immutable finite placement of tiles at unique integer positions.

    Equality and hashing go through the canonical key: the position-sorted
    tuple of (x, y, tile name), so any two attachment orders reaching the same
    placement set compare equal.
    """

    __slots__ = ("_tiles", "_key", "_hash")

    def __init__(self, placements: Mapping[Position, TileType] | Iterable[tuple[Position, TileType]]):
        tiles = dict(placements)
        self._tiles: dict[Position, TileType] = tiles
        self._key = tuple(sorted((x, y, t.name) for (x, y), t in tiles.items()))
        self._hash = hash(self._key)

    @property
    def key(self) -> tuple[tuple[int, int, str], ...]:
        return self._key

    def __len__(self) -> int:
        return len(self._tiles)

    def __contains__(self, pos: Position) -> bool:
        return pos in self._tiles

    def __iter__(self) -> Iterator[Position]:
        return iter(self._tiles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Assembly) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Assembly({len(self._tiles)} tiles)"

    def tile_at(self, pos: Position) -> TileType | None:
        return self._tiles.get(pos)

    def items(self) -> Iterator[tuple[Position, TileType]]:
        return iter(self._tiles.items())

    def positions(self) -> Iterator[Position]:
        return iter(self._tiles)

    def with_tile(self, pos: Position, tile: TileType) -> "Assembly":
        if pos in self._tiles:
            raise OccupiedPositionError(f"position {pos} already occupied")
        tiles = dict(self._tiles)
        tiles[pos] = tile
        return Assembly(tiles)

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y) of the occupied cells."""
        xs = [p[0] for p in self._tiles]
        ys = [p[1] for p in self._tiles]
        return min(xs), min(ys), max(xs), max(ys)

    def count_type(self, name: str) -> int:
        return sum(1 for t in self._tiles.values() if t.name == name)


def canonical_key(assembly: Assembly) -> tuple[tuple[int, int, str], ...]:
    """Order-independent hashable identity of an assembly's placements."""
    return assembly.key


class TileSet:
    """The finite set of tile types, with a consistent glue table.

    A glue label must carry a single strength across the whole set.
    """

    def __init__(self, tiles: Iterable[TileType]):
        self._tiles = tuple(tiles)
        by_name: dict[str, TileType] = {}
        glue_table: dict[str, int] = {}
        for t in self._tiles:
            if t.name in by_name:
                raise InvalidSystemError(f"duplicate tile type name {t.name!r}")
            by_name[t.name] = t
            for g in t.glues():
                prev = glue_table.get(g.label)
                if prev is None:
                    glue_table[g.label] = g.strength
                elif prev != g.strength:
                    raise InvalidSystemError(
                        f"glue {g.label!r} declared with strengths {prev} and {g.strength}"
                    )
        self._by_name = by_name
        self._glue_table = glue_table

    @property
    def tiles(self) -> tuple[TileType, ...]:
        return self._tiles

    @property
    def glue_table(self) -> Mapping[str, int]:
        return self._glue_table

    def __len__(self) -> int:
        return len(self._tiles)

    def __iter__(self) -> Iterator[TileType]:
        return iter(self._tiles)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def names(self) -> list[str]:
        return [t.name for t in self._tiles]

    def get(self, name: str) -> TileType:
        try:
            return self._by_name[name]
        except KeyError:
            raise InvalidSystemError(f"unknown tile type {name!r}") from None


class TileSystem:
    """Tile set + seed assembly + temperature.

    The seed must be stable at the system temperature; this is checked with
    the min-cut stability test at construction time.
    """

    def __init__(self, tiles: TileSet, seed: Assembly, temperature: int, name: str = ""):
        if temperature < 1:
            raise InvalidSystemError("temperature must be a positive integer")
        if len(seed) == 0:
            raise InvalidSystemError("seed assembly must be non-empty")
        for _, t in seed.items():
            # Seed tiles are ordinary members of the tile set.
            if t.name not in tiles or tiles.get(t.name) != t:
                raise InvalidSystemError(f"seed tile {t.name!r} not in tile set")
        self.tiles = tiles
        self.seed = seed
        self.temperature = temperature
        self.name = name
        if not is_tau_stable(self, seed):
            raise InvalidSystemError("seed assembly is not stable at the system temperature")

    def __repr__(self) -> str:
        return (
            f"TileSystem({self.name or 'unnamed'}: {len(self.tiles)} types, "
            f"|seed|={len(self.seed)}, tau={self.temperature})"
        )


def binding_strength(system: TileSystem, assembly: Assembly, tile: TileType, pos: Position) -> int:
    """Total strength binding `tile` at the empty position `pos`.

    Sums matched-glue strengths over the up-to-four occupied neighbors;
    mismatched or absent glues contribute nothing.
    """
    if pos in assembly:
        raise OccupiedPositionError(f"position {pos} already occupied")
    x, y = pos
    total = 0
    for face, (dx, dy) in enumerate(_STEPS):
        neighbor = assembly.tile_at((x + dx, y + dy))
        if neighbor is None:
            continue
        total += bond_strength(tile.glue(face), neighbor.glue(_OPPOSITE[face]))
    return total


def frontier(system: TileSystem, assembly: Assembly) -> list[tuple[TileType, Position]]:
    """All (tile type, position) pairs attachable at the system temperature.

    Ordering is deterministic: position-lexicographic, then tile name.
    """
    candidates: set[Position] = set()
    for (x, y) in assembly.positions():
        for dx, dy in _STEPS:
            p = (x + dx, y + dy)
            if p not in assembly:
                candidates.add(p)
    out: list[tuple[TileType, Position]] = []
    tau = system.temperature
    for pos in candidates:
        for tile in system.tiles:
            if binding_strength(system, assembly, tile, pos) >= tau:
                out.append((tile, pos))
    out.sort(key=lambda e: (e[1], e[0].name))
    return out


def frontier_update(
    system: TileSystem,
    assembly: Assembly,
    parent_frontier: list[tuple[TileType, Position]],
    attached_pos: Position,
) -> list[tuple[TileType, Position]]:
    """Frontier of `assembly` given its parent's frontier and the new tile position.

    Attaching at p only changes attachability at p itself and at the four
    neighbors of p, so only those positions are recomputed.  Agreement with
    the full scan is covered by property tests.
    """
    x, y = attached_pos
    dirty = {attached_pos}
    for dx, dy in _STEPS:
        dirty.add((x + dx, y + dy))
    out = [e for e in parent_frontier if e[1] not in dirty]
    tau = system.temperature
    for pos in dirty:
        if pos in assembly:
            continue
        px, py = pos
        if not any(assembly.tile_at((px + dx, py + dy)) for dx, dy in _STEPS):
            continue
        for tile in system.tiles:
            if binding_strength(system, assembly, tile, pos) >= tau:
                out.append((tile, pos))
    out.sort(key=lambda e: (e[1], e[0].name))
    return out


def attach(system: TileSystem, assembly: Assembly, tile: TileType, pos: Position) -> Assembly:
    """One legal growth step; raises IllegalAttachmentError below temperature."""
    if pos in assembly:
        raise IllegalAttachmentError(f"position {pos} already occupied")
    if binding_strength(system, assembly, tile, pos) < system.temperature:
        raise IllegalAttachmentError(
            f"tile {tile.name!r} binds below temperature {system.temperature} at {pos}"
        )
    return assembly.with_tile(pos, tile)


def is_terminal(system: TileSystem, assembly: Assembly) -> bool:
    return not frontier(system, assembly)


def _bond_edges(assembly: Assembly) -> list[tuple[Position, Position, int]]:
    edges = []
    for (x, y), t in assembly.items():
        for face in (0, 1):  # north and east once per cell avoids duplicates
            dx, dy = _STEPS[face]
            q = (x + dx, y + dy)
            other = assembly.tile_at(q)
            if other is None:
                continue
            w = bond_strength(t.glue(face), other.glue(_OPPOSITE[face]))
            if w > 0:
                edges.append(((x, y), q, w))
    return edges


def _max_flow(n: int, adj: list[list[int]], cap: list[list[int]], s: int, t: int) -> int:
    """Edmonds-Karp on a small residual matrix."""
    flow = 0
    while True:
        parent = [-1] * n
        parent[s] = s
        queue = [s]
        for u in queue:
            for v in adj[u]:
                if parent[v] == -1 and cap[u][v] > 0:
                    parent[v] = u
                    if v == t:
                        break
                    queue.append(v)
            if parent[t] != -1:
                break
        if parent[t] == -1:
            return flow
        bottleneck = None
        v = t
        while v != s:
            u = parent[v]
            c = cap[u][v]
            bottleneck = c if bottleneck is None else min(bottleneck, c)
            v = u
        v = t
        while v != s:
            u = parent[v]
            cap[u][v] -= bottleneck
            cap[v][u] += bottleneck
            v = u
        flow += bottleneck


def min_cut(assembly: Assembly) -> int | None:
    """Global min-cut weight of the bond graph; None for a single tile.

    The bond graph is undirected, so the global min cut separates an arbitrary
    fixed vertex from some other vertex and equals the minimum s-t max-flow
    over all choices of t.
    """
    positions = sorted(assembly.positions())
    n = len(positions)
    if n == 1:
        return None
    index = {p: i for i, p in enumerate(positions)}
    cap0 = [[0] * n for _ in range(n)]
    adj: list[set[int]] = [set() for _ in range(n)]
    for p, q, w in _bond_edges(assembly):
        i, j = index[p], index[q]
        cap0[i][j] += w
        cap0[j][i] += w
        adj[i].add(j)
        adj[j].add(i)
    adj_list = [sorted(a) for a in adj]
    best = None
    for t in range(1, n):
        cap = [row[:] for row in cap0]
        f = _max_flow(n, adj_list, cap, 0, t)
        if best is None or f < best:
            best = f
        if best == 0:
            break
    return best


def is_tau_stable(system: TileSystem, assembly: Assembly) -> bool:
    """True iff every cut of the bond graph has weight >= the temperature.

    A single tile is vacuously stable.  A disconnected assembly has a cut of
    weight 0 and is never stable.
    """
    cut = min_cut(assembly)
    if cut is None:
        return True
    return cut >= system.temperature
