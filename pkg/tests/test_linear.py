"""The 5x4 block simulation and the exact expected-length systems."""

from fractions import Fraction

import pytest

from atamrng.analysis import (
    explore,
    partition_masses,
    terminal_distribution,
    twochoice_expected_length,
    verify_fairness_symbolic,
)
from atamrng.analysis.distribution import PartitionSpec, Rule
from atamrng.concentration import ConcentrationMap, uniform
from atamrng.constructions.linear import (
    base_two_choice_expected_length,
    decode_regions,
    expected_length_system,
    robust_simulate,
)
from atamrng.core import Assembly, Glue, TileSet, TileSystem, TileType
from atamrng.errors import BuildParameterError, NotTwoChoiceError
from atamrng.rng import substream
from atamrng.constructions.types import BuiltSystem


def two_outcome_base(extra_step: bool = True) -> BuiltSystem:
    """A tiny two-choice base with two terminal families (|T| = 4 or 3)."""
    g0, g1 = Glue("g0", 2), Glue("g1", 2)
    tiles = [TileType("origin", east=g0)]
    if extra_step:
        tiles.append(TileType("mid", west=g0, east=g1))
        gate = g1
    else:
        gate = g0
    tiles.append(TileType("A", west=gate))
    tiles.append(TileType("B", west=gate))
    system = TileSystem(TileSet(tiles), Assembly({(0, 0): tiles[0]}), 2)
    partition = PartitionSpec((Rule("A", contains_label="A"), Rule("B", contains_label="B")))
    return BuiltSystem(system=system, partition=partition, name="two_outcome_base")


def test_simulation_tile_count_is_twenty_per_base_type():
    base = two_outcome_base(extra_step=True)
    assert len(base.system.tiles) == 4
    sim = robust_simulate(base)
    assert len(sim.system.tiles) == 80
    base3 = two_outcome_base(extra_step=False)
    assert len(robust_simulate(base3).system.tiles) == 60


def test_simulation_preserves_two_outcome_masses_robustly():
    base = two_outcome_base()
    sim = robust_simulate(base)
    assert len(sim.system.seed) == 1
    assert sim.system.temperature == 2
    verdict = verify_fairness_symbolic(sim.system, sim.partition, max_space=50)
    assert verdict.fair
    graph = explore(sim.system, 50)
    for i in range(10):
        stream = substream(7, i)
        conc = ConcentrationMap(
            {n: Fraction(stream.randint(1, 999), stream.randint(1, 999)) for n in sim.system.tiles.names()}
        )
        bias = partition_masses(terminal_distribution(graph, conc), sim.partition)
        assert bias.outcome_masses["end:A"] == Fraction(1, 2)
        assert bias.outcome_masses["end:B"] == Fraction(1, 2)


def test_simulation_terminal_bijection_and_decode():
    base = two_outcome_base()
    base_graph = explore(base.system, 10)
    base_terminals = {
        tuple(t.name for _, t in sorted(n.assembly.items())) for n in base_graph.terminals()
    }
    sim = robust_simulate(base)
    sim_graph = explore(sim.system, 50)
    decoded = {tuple(decode_regions(n.assembly)) for n in sim_graph.terminals()}
    assert len(sim_graph.terminals()) == len(base_graph.terminals()) == 2
    assert decoded == base_terminals


def test_simulation_width_is_four():
    base = two_outcome_base()
    sim = robust_simulate(base)
    graph = explore(sim.system, 50)
    for node in graph.nodes:
        ys = {y for (_, y) in node.assembly.positions()}
        assert ys <= {0, 1, 2, 3}
    for node in graph.terminals():
        ys = {y for (_, y) in node.assembly.positions()}
        assert ys == {0, 1, 2, 3}


def test_simulation_of_unbounded_base_width_and_fairness_prefix():
    base = base_two_choice_expected_length(3)  # pattern 'R': restart loop
    sim = robust_simulate(base)
    graph = explore(sim.system, 130, allow_truncation=True)
    assert graph.has_truncation
    for node in graph.nodes:
        ys = {y for (_, y) in node.assembly.positions()}
        assert ys <= {0, 1, 2, 3}


@pytest.mark.parametrize("n", [10, 25, 63])
def test_expected_length_system_exact(n):
    built = expected_length_system(n)
    m = built.metadata["base_expected_length"]
    r = built.metadata["remainder"]
    assert 5 * m + r == n
    base = base_two_choice_expected_length(m)
    assert twochoice_expected_length(base.system, uniform(base.system)) == m


def test_expected_length_system_rejects_small_n():
    with pytest.raises(BuildParameterError):
        expected_length_system(3)


def test_expected_length_terminal_extent_matches_bounded_case():
    built = expected_length_system(11)  # m = 2 deterministic base, r = 1
    graph = explore(built.system, 60)
    assert not graph.has_truncation
    assert len(graph.terminals()) == 1
    terminal = graph.terminals()[0].assembly
    min_x, min_y, max_x, max_y = terminal.bounding_box()
    assert max_x - min_x + 1 == 11
    assert max_y - min_y + 1 == 4


def test_simulation_rejects_non_two_choice():
    from atamrng.constructions.gadgets import big_seed_gadget

    with pytest.raises(NotTwoChoiceError):
        robust_simulate(big_seed_gadget())
