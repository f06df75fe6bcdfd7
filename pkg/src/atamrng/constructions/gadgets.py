"""Coin-flip gadgets: the non-robust baseline and the three robust variants.

All three robust gadgets realize the same 6-state chain over two flip tiles h
and t: the first attachment picks a side with probability proportional to its
weight, the middle phase forces two attachments of one type (probability 1/2
regardless of weights), and the final competition re-weights the other way.
The product telescopes to exactly 1/2 for every weight assignment.

Outcomes are read at the middle slot of the three flip cells, which ends up
holding h in one terminal family and t in the other.
"""

from __future__ import annotations

from ..analysis.distribution import PartitionSpec, Rule
from ..core import Assembly, Glue, Position, TileSet, TileSystem, TileType
from .types import BuiltSystem, ChainContract, ContractEdge


def flip_chain_contract() -> ChainContract:
    """The shared quotient chain of the robust gadgets (slots named 1,2,3)."""
    edges = (
        ContractEdge("start", "__t", "t"),
        ContractEdge("start", "h__", "h"),
        ContractEdge("__t", "_ht", "h"),
        ContractEdge("__t", "h_t", "h"),
        ContractEdge("h__", "ht_", "t"),
        ContractEdge("h__", "h_t", "t"),
        ContractEdge("_ht", "hht", "h"),
        ContractEdge("h_t", "hht", "h"),
        ContractEdge("h_t", "htt", "t"),
        ContractEdge("ht_", "htt", "t"),
    )
    candidates = {
        "start": ("h", "t"),
        "__t": ("h", "h"),
        "h__": ("t", "t"),
        "_ht": ("h",),
        "h_t": ("h", "t"),
        "ht_": ("t",),
    }
    return ChainContract(
        states=("start", "__t", "h__", "_ht", "h_t", "ht_", "hht", "htt"),
        edges=edges,
        candidates=candidates,
    )


def slot_labeler(slot1: Position, slot2: Position, slot3: Position):
    """Map assemblies to contract states by the three slot cells.

    Assemblies whose flip cells have not started (deterministic prefix or
    incomplete structure) map to 'start' only once the structure is complete
    enough that a slot could fill; callers pass assemblies from the explored
    graph, so it is enough to key purely on slot contents.
    """

    def label(assembly: Assembly) -> str | None:
        s1 = assembly.tile_at(slot1)
        s2 = assembly.tile_at(slot2)
        s3 = assembly.tile_at(slot3)
        names = tuple(t.name if t else "_" for t in (s1, s2, s3))
        table = {
            ("_", "_", "_"): "start",
            ("_", "_", "t"): "__t",
            ("h", "_", "_"): "h__",
            ("_", "h", "t"): "_ht",
            ("h", "_", "t"): "h_t",
            ("h", "t", "_"): "ht_",
            ("h", "h", "t"): "hht",
            ("h", "t", "t"): "htt",
        }
        return table.get(names)

    return label


def simple_flip() -> BuiltSystem:
    """One direct competition between an H and a T tile; fair only at equal weights."""
    F = Glue("F", 1)
    sigma = TileType("sigma", east=F)
    H = TileType("H", west=F)
    T = TileType("T", west=F)
    system = TileSystem(
        TileSet([sigma, H, T]),
        Assembly({(0, 0): sigma}),
        temperature=1,
        name="simple_flip",
    )
    partition = PartitionSpec((Rule("H", contains_label="H"), Rule("T", contains_label="T")))
    return BuiltSystem(
        system=system,
        partition=partition,
        name="simple_flip",
        metadata={
            "claimed_robust_fair": False,
            "claimed_extensibility": 1,
            "max_space": 2,
            "slots": {"slot2": (1, 0)},
        },
    )


def big_seed_gadget() -> BuiltSystem:
    """Robust fair flip at temperature 1 with a 7-tile preformed pocket seed.

    The bottom row exposes the entry glues of the two outer slots upward; the
    middle slot is reachable only through the side faces of already-placed
    flip tiles, which yields the forced-pair middle phase.  The corner posts
    are inert caps so no seed type can ever re-attach.
    """
    s1 = Glue("A", 1)  # under slot1: h's entry (h only)
    s3 = Glue("B", 1)  # under slot3: t's entry (t only)
    C = Glue("C", 1)  # h's east / t's west: the hand-off glue
    bond = [Glue(f"seed{i}", 1) for i in range(6)]

    tiles = [
        TileType("base0", east=bond[0], north=bond[4]),
        TileType("base1", west=bond[0], east=bond[1], north=s1),
        TileType("base2", west=bond[1], east=bond[2]),
        TileType("base3", west=bond[2], east=bond[3], north=s3),
        TileType("base4", west=bond[3], north=bond[5]),
        TileType("postL", south=bond[4]),
        TileType("postR", south=bond[5]),
        TileType("h", south=s1, east=C),
        TileType("t", west=C, south=s3),
    ]
    tile_set = TileSet(tiles)
    by = {t.name: t for t in tiles}
    seed = Assembly(
        {
            (0, 0): by["base0"],
            (1, 0): by["base1"],
            (2, 0): by["base2"],
            (3, 0): by["base3"],
            (4, 0): by["base4"],
            (0, 1): by["postL"],
            (4, 1): by["postR"],
        }
    )
    system = TileSystem(tile_set, seed, temperature=1, name="big_seed_gadget")
    slot2 = (2, 1)
    partition = PartitionSpec(
        (
            Rule("heads", at=(slot2[0], slot2[1], "h")),
            Rule("tails", at=(slot2[0], slot2[1], "t")),
        )
    )
    return BuiltSystem(
        system=system,
        partition=partition,
        name="big_seed_gadget",
        metadata={
            "claimed_robust_fair": True,
            "claimed_extensibility": 2,
            "max_space": 10,
            "slots": {"slot1": (1, 1), "slot2": slot2, "slot3": (3, 1)},
            "flip_tiles": ("h", "t"),
        },
    )


def single_seed_gadget() -> BuiltSystem:
    """Robust fair flip from a single seed tile at temperature 2.

    A strength-2 chain winds around the flip pocket and ends with a
    cooperatively placed corner tile S whose two strength-1 faces open the
    outer slots simultaneously; until S the process is deterministic.  The
    middle slot always needs two strength-1 bonds, one of them from a
    previously placed flip tile, which reproduces the forced-pair phase.
    """
    g = [Glue(f"path{i}", 2) for i in range(10)]
    u = Glue("u", 1)
    v = Glue("v", 1)
    G = Glue("G", 1)  # flip tiles' west glue; exposed by sigma and S
    E = Glue("E", 1)  # h's south support under slot1
    D = Glue("D", 1)  # t's south glue; exposed by S and by placed h tiles
    Q = Glue("Q", 1)  # t's east support beside slot3
    TN = Glue("TN", 1)  # t's top marker (output side)

    tiles = [
        TileType("sigma", south=g[0], east=G),
        TileType("p1", north=g[0], south=g[1]),
        TileType("p2", north=g[1], east=g[2]),
        TileType("p3", west=g[2], east=g[3], north=E),
        TileType("p4", west=g[3], east=g[4], north=u),
        TileType("p5", west=g[4], east=g[5]),
        TileType("p6", west=g[5], north=g[6]),
        TileType("p7", south=g[6], north=g[7]),
        TileType("p8", south=g[7], west=g[8]),
        TileType("p9", east=g[8], south=g[9], west=Q),
        TileType("p10", north=g[9], west=v),
        TileType("S", south=u, east=v, west=G, north=D),
        TileType("h", west=G, east=G, south=E, north=D),
        TileType("t", west=G, east=Q, south=D, north=TN),
    ]
    tile_set = TileSet(tiles)
    by = {t.name: t for t in tiles}
    seed = Assembly({(0, 0): by["sigma"]})
    system = TileSystem(tile_set, seed, temperature=2, name="single_seed_gadget")
    slot2 = (1, 0)
    partition = PartitionSpec(
        (
            Rule("heads", at=(slot2[0], slot2[1], "h")),
            Rule("tails", at=(slot2[0], slot2[1], "t")),
        )
    )
    return BuiltSystem(
        system=system,
        partition=partition,
        name="single_seed_gadget",
        metadata={
            "claimed_robust_fair": True,
            "claimed_extensibility": 2,
            "max_space": 15,
            "deterministic_until": "S",
            "slots": {"slot1": (1, -1), "slot2": slot2, "slot3": (2, 0)},
            "flip_tiles": ("h", "t"),
        },
    )


def temp1_gadget() -> BuiltSystem:
    """Robust fair flip from a single seed at temperature 1.

    Geometry does all the gating: a strength-1 path winds around the pocket
    and ends at the corner tile S, whose east and north faces open the two
    outer slots at once.  The middle slot is reachable only through side
    faces of placed flip tiles.  After the decision, exactly one spillover
    tile attaches beside the middle slot (t above a decided h, h beside a
    decided t); the path cells wall off everything else, so each terminal
    carries one outcome-neutral extra tile and growth stops.
    """
    k = [Glue(f"wind{i}", 1) for i in range(11)]
    C = Glue("C", 1)  # h's west glue; exposed by S (slot1) and by t's east face
    D = Glue("D", 1)  # t's south glue; exposed by S (slot3) and by h's north face

    tiles = [
        TileType("sigma", west=k[0]),
        TileType("wall", east=k[0], north=k[1]),
        TileType("c1", south=k[1], west=k[2]),
        TileType("c2", east=k[2], west=k[3]),
        TileType("c3", east=k[3], west=k[4]),
        TileType("c4", east=k[4], south=k[5]),
        TileType("c5", north=k[5], south=k[6]),
        TileType("c6", north=k[6], south=k[7]),
        TileType("c7", north=k[7], south=k[8]),
        TileType("c8", north=k[8], east=k[9]),
        TileType("anchor", west=k[9], north=k[10]),
        TileType("S", south=k[10], east=C, north=D),
        TileType("h", west=C, north=D),
        TileType("t", south=D, east=C),
    ]
    tile_set = TileSet(tiles)
    by = {t.name: t for t in tiles}
    seed = Assembly({(4, 1): by["sigma"]})
    system = TileSystem(tile_set, seed, temperature=1, name="temp1_gadget")
    slot2 = (2, 0)
    partition = PartitionSpec(
        (
            Rule("heads", at=(slot2[0], slot2[1], "h")),
            Rule("tails", at=(slot2[0], slot2[1], "t")),
        )
    )
    return BuiltSystem(
        system=system,
        partition=partition,
        name="temp1_gadget",
        metadata={
            "claimed_robust_fair": True,
            "claimed_extensibility": 2,
            "max_space": 16,
            "slots": {"slot1": (2, -1), "slot2": slot2, "slot3": (1, 0)},
            "flip_tiles": ("h", "t"),
        },
    )
