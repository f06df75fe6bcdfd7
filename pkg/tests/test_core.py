from fractions import Fraction

import pytest

from atamrng.concentration import ConcentrationMap, trans_prob, uniform
from atamrng.core import (
    Assembly,
    Glue,
    TileSet,
    TileSystem,
    TileType,
    attach,
    binding_strength,
    canonical_key,
    frontier,
    is_tau_stable,
    is_terminal,
    min_cut,
)
from atamrng.errors import (
    IllegalAttachmentError,
    InvalidSystemError,
    NotASuccessorError,
    OccupiedPositionError,
)


def line_system(tau: int = 1):
    a = Glue("a", tau)
    b = Glue("b", tau)
    t0 = TileType("t0", east=a)
    t1 = TileType("t1", west=a, east=b)
    t2 = TileType("t2", west=b)
    ts = TileSet([t0, t1, t2])
    return TileSystem(ts, Assembly({(0, 0): t0}), tau)


def test_binding_strength_empty_neighbors():
    sys = line_system()
    tile = sys.tiles.get("t1")
    assert binding_strength(sys, sys.seed, tile, (5, 5)) == 0


def test_binding_strength_single_match():
    sys = line_system()
    assert binding_strength(sys, sys.seed, sys.tiles.get("t1"), (1, 0)) == 1
    assert binding_strength(sys, sys.seed, sys.tiles.get("t2"), (1, 0)) == 0


def test_binding_strength_occupied_position():
    sys = line_system()
    with pytest.raises(OccupiedPositionError):
        binding_strength(sys, sys.seed, sys.tiles.get("t1"), (0, 0))


def test_frontier_and_attach_round_trip():
    sys = line_system()
    entries = frontier(sys, sys.seed)
    assert [(t.name, p) for t, p in entries] == [("t1", (1, 0))]
    grown = attach(sys, sys.seed, sys.tiles.get("t1"), (1, 0))
    assert len(grown) == 2
    entries2 = frontier(sys, grown)
    assert [(t.name, p) for t, p in entries2] == [("t2", (2, 0))]
    done = attach(sys, grown, sys.tiles.get("t2"), (2, 0))
    assert is_terminal(sys, done)


def test_attach_rejects_weak_and_occupied():
    sys = line_system(tau=2)
    with pytest.raises(IllegalAttachmentError):
        # t2's glue b has strength 2 but does not match t0's east glue a.
        attach(sys, sys.seed, sys.tiles.get("t2"), (1, 0))
    with pytest.raises(IllegalAttachmentError):
        attach(sys, sys.seed, sys.tiles.get("t0"), (0, 0))


def test_attach_rejects_below_temperature():
    # Strength-1 glue at temperature 2 must not attach.
    a = Glue("a", 1)
    t0 = TileType("t0", east=a)
    t1 = TileType("t1", west=a)
    sys = TileSystem(TileSet([t0, t1]), Assembly({(0, 0): t0}), 2)
    assert binding_strength(sys, sys.seed, t1, (1, 0)) == 1
    with pytest.raises(IllegalAttachmentError):
        attach(sys, sys.seed, t1, (1, 0))
    assert frontier(sys, sys.seed) == []


def test_canonical_key_order_independent():
    sys = line_system()
    t1, t2 = sys.tiles.get("t1"), sys.tiles.get("t2")
    one = sys.seed.with_tile((1, 0), t1).with_tile((2, 0), t2)
    # Same placements, different dict insertion order.
    other = Assembly({(2, 0): t2, (0, 0): sys.tiles.get("t0"), (1, 0): t1})
    assert canonical_key(one) == canonical_key(other)
    assert one == other and hash(one) == hash(other)


def test_canonical_key_distinguishes_content_and_size():
    sys = line_system()
    t1 = sys.tiles.get("t1")
    grown = sys.seed.with_tile((1, 0), t1)
    assert canonical_key(grown) != canonical_key(sys.seed)
    renamed = Assembly({(0, 0): sys.tiles.get("t0"), (1, 0): sys.tiles.get("t2")})
    assert canonical_key(grown) != canonical_key(renamed)


def test_single_tile_assembly_is_stable():
    sys = line_system(tau=2)
    assert is_tau_stable(sys, sys.seed)
    assert min_cut(sys.seed) is None


def test_two_tiles_one_weak_bond_unstable_at_tau2():
    a = Glue("a", 1)
    t0 = TileType("t0", east=a)
    t1 = TileType("t1", west=a)
    ts = TileSet([t0, t1])
    asm = Assembly({(0, 0): t0, (1, 0): t1})
    sys1 = TileSystem(ts, Assembly({(0, 0): t0}), 1)
    assert is_tau_stable(sys1, asm)
    sys2 = TileSystem(ts, Assembly({(0, 0): t0}), 2)
    assert not is_tau_stable(sys2, asm)


def test_disconnected_assembly_unstable():
    sys = line_system()
    asm = Assembly({(0, 0): sys.tiles.get("t0"), (3, 3): sys.tiles.get("t2")})
    assert min_cut(asm) == 0
    assert not is_tau_stable(sys, asm)


def test_seed_must_be_stable_and_in_tile_set():
    a = Glue("a", 1)
    t0 = TileType("t0", east=a)
    t1 = TileType("t1", west=a)
    stranger = TileType("stranger")
    with pytest.raises(InvalidSystemError):
        TileSystem(TileSet([t0, t1]), Assembly({(0, 0): stranger}), 1)
    with pytest.raises(InvalidSystemError):
        # Disconnected two-tile seed.
        TileSystem(TileSet([t0, t1]), Assembly({(0, 0): t0, (5, 0): t1}), 1)


def test_glue_table_consistency():
    with pytest.raises(InvalidSystemError):
        TileSet([TileType("x", east=Glue("g", 1)), TileType("y", west=Glue("g", 2))])
    with pytest.raises(InvalidSystemError):
        TileSet([TileType("x"), TileType("x")])


def test_trans_prob_simple_competition():
    F = Glue("F", 1)
    sigma = TileType("sigma", east=F)
    H = TileType("H", west=F)
    T = TileType("T", west=F)
    sys = TileSystem(TileSet([sigma, H, T]), Assembly({(0, 0): sigma}), 1)
    conc = ConcentrationMap({"sigma": 5, "H": 2, "T": 1})
    heads = sys.seed.with_tile((1, 0), H)
    assert trans_prob(sys, conc, sys.seed, heads) == Fraction(2, 3)
    with pytest.raises(NotASuccessorError):
        trans_prob(sys, conc, heads, sys.seed)
    with pytest.raises(NotASuccessorError):
        trans_prob(sys, conc, sys.seed, sys.seed)
