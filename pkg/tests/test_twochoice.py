"""Front-chain recognition and exact expected-length solving."""

from fractions import Fraction

import pytest

from atamrng.analysis.twochoice import default_classify_depth
from atamrng.analysis import (
    classify_two_choice,
    expected_space,
    explore,
    front_chain,
    gaussian_solve,
    terminal_distribution,
    twochoice_expected_length,
)
from atamrng.concentration import ConcentrationMap, uniform
from atamrng.constructions.gadgets import big_seed_gadget
from atamrng.constructions.linear import (
    _pattern_for,
    base_two_choice_expected_length,
    expected_placements,
)
from atamrng.core import Assembly, Glue, TileSet, TileSystem, TileType
from atamrng.errors import NonTerminatingChainError, NotTwoChoiceError


def deterministic_line(n: int) -> TileSystem:
    glues = [Glue(f"g{i}", 1) for i in range(n - 1)]
    tiles = [TileType("cell0", east=glues[0] if n > 1 else None)]
    for i in range(1, n):
        tiles.append(
            TileType(f"cell{i}", west=glues[i - 1], east=glues[i] if i < n - 1 else None)
        )
    return TileSystem(TileSet(tiles), Assembly({(0, 0): tiles[0]}), 1)


def geometric_stop_line() -> TileSystem:
    # After the seed, each step keeps going or caps, two choices forever.
    g = Glue("g", 1)
    end = Glue("end", 1)
    seed = TileType("start", east=g)
    go = TileType("go", west=g, east=g)
    cap = TileType("cap", west=g)
    return TileSystem(TileSet([seed, go, cap]), Assembly({(0, 0): seed}), 1)


def test_deterministic_line_classified_and_solved():
    sys = deterministic_line(5)
    report = classify_two_choice(sys, 10)
    assert report.is_two_choice and not report.bounded_verification
    assert twochoice_expected_length(sys, uniform(sys)) == 5


def test_geometric_line_expected_length():
    sys = geometric_stop_line()
    report = classify_two_choice(sys, 12)
    assert report.is_two_choice and report.bounded_verification
    # Fair stop each step: expected placements 1/(1/2) = 2, length 3.
    assert twochoice_expected_length(sys, uniform(sys)) == 3
    # Skewed weights: stop probability p = c/(g+c); E[extra] = 1/p.
    conc = ConcentrationMap({"start": 1, "go": 3, "cap": 1})
    assert twochoice_expected_length(sys, conc) == 1 + Fraction(4, 1)


def test_non_line_system_rejected():
    built = big_seed_gadget()
    report = classify_two_choice(built.system, 12)
    assert not report.is_two_choice
    with pytest.raises(NotTwoChoiceError):
        twochoice_expected_length(built.system, uniform(built.system))


def test_never_terminating_chain_detected():
    g = Glue("g", 1)
    seed = TileType("start", east=g)
    loop = TileType("loop", west=g, east=g)
    sys = TileSystem(TileSet([seed, loop]), Assembly({(0, 0): seed}), 1)
    with pytest.raises(NonTerminatingChainError):
        twochoice_expected_length(sys, uniform(sys))


def test_gaussian_solver_exact():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    rhs = [Fraction(5), Fraction(10)]
    x, y = gaussian_solve(a, rhs)
    assert 2 * x + y == 5 and x + 3 * y == 10


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 7, 12, 31, 100])
def test_base_builder_hits_exact_expectation(m):
    built = base_two_choice_expected_length(m)
    sys = built.system
    assert classify_two_choice(sys, default_classify_depth(sys)).is_two_choice
    assert twochoice_expected_length(sys, uniform(sys)) == m
    bound = built.metadata["tile_count_bound_factor"]
    import math

    assert len(sys.tiles) <= bound * math.log2(m + 1)


@pytest.mark.parametrize("target", list(range(0, 40)) + [63, 97, 128])
def test_pattern_decomposition_matches_recurrence(target):
    pattern = _pattern_for(target)
    assert expected_placements(pattern) == target


def test_front_chain_agrees_with_exploration_on_bounded_line():
    # Exact expected length from the chain equals the explore-based value on
    # a bounded two-choice system (both exact rationals).
    g0, g1 = Glue("g0", 1), Glue("g1", 1)
    seed = TileType("start", east=g0)
    a = TileType("a", west=g0, east=g1)
    b = TileType("b", west=g0)
    c = TileType("c", west=g1)
    sys = TileSystem(TileSet([seed, a, b, c]), Assembly({(0, 0): seed}), 1)
    conc = ConcentrationMap({"start": 1, "a": 2, "b": 3, "c": 1})
    chain_value = twochoice_expected_length(sys, conc)
    graph = explore(sys, 10)
    assert expected_space(graph, conc) == chain_value
