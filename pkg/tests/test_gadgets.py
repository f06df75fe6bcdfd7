"""The coin-flip gadgets against their declared chain and distribution claims."""

from fractions import Fraction

import pytest

from atamrng.analysis import (
    explore,
    extensibility,
    expected_space,
    partition_masses,
    symbolic_outcome_functions,
    terminal_distribution,
    verify_fairness_symbolic,
)
from atamrng.analysis.symbolic import Polynomial
from atamrng.concentration import ConcentrationMap, uniform
from atamrng.constructions.gadgets import (
    big_seed_gadget,
    flip_chain_contract,
    simple_flip,
    single_seed_gadget,
    slot_labeler,
    temp1_gadget,
)
from atamrng.constructions.types import verify_chain_contract
from atamrng.core import binding_strength, frontier
from atamrng.rng import substream

GADGETS = [big_seed_gadget, single_seed_gadget, temp1_gadget]


def random_weight_maps(system, count, seed):
    names = system.tiles.names()
    for i in range(count):
        stream = substream(seed, i)
        yield ConcentrationMap(
            {n: Fraction(stream.randint(1, 10**6), stream.randint(1, 10**6)) for n in names}
        )


def test_simple_flip_unfair():
    built = simple_flip()
    graph = explore(built.system, 4)
    conc = ConcentrationMap({"sigma": 1, "H": 2, "T": 1})
    bias = partition_masses(terminal_distribution(graph, conc), built.partition)
    assert bias.outcome_masses == {"H": Fraction(2, 3), "T": Fraction(1, 3)}
    assert bias.bias == Fraction(1, 6)
    verdict = verify_fairness_symbolic(built.system, built.partition, 4)
    assert not verdict.fair
    assert verdict.counterexample_weights is not None
    masses = verdict.counterexample_masses
    assert masses["H"] != masses["T"]


def test_big_seed_state_graph_matches_proof_enumeration():
    built = big_seed_gadget()
    graph = explore(built.system, 10)
    assert len(graph) == 8
    assert len(graph.terminals()) == 2
    assert not graph.has_truncation
    # The seed offers exactly h at slot1 and t at slot3.
    entries = [(t.name, p) for t, p in graph.root.frontier]
    assert entries == [(("h"), (1, 1)), (("t"), (3, 1))]


@pytest.mark.parametrize("builder", GADGETS)
def test_gadget_chain_contract_realized(builder):
    built = builder()
    slots = built.metadata["slots"]
    label = slot_labeler(slots["slot1"], slots["slot2"], slots["slot3"])
    graph = explore(built.system, built.metadata["max_space"] + 2, allow_truncation=False)
    contract = flip_chain_contract()
    contract.check_consistent()
    problems = verify_chain_contract(graph, contract, label)
    assert problems == []


@pytest.mark.parametrize("builder", GADGETS)
def test_gadget_symbolic_fairness(builder):
    built = builder()
    verdict = verify_fairness_symbolic(
        built.system, built.partition, built.metadata["max_space"] + 2
    )
    assert verdict.fair


@pytest.mark.parametrize("builder", GADGETS)
def test_gadget_exactly_half_at_random_weights(builder):
    built = builder()
    graph = explore(built.system, built.metadata["max_space"] + 2)
    for conc in random_weight_maps(built.system, 25, seed=99):
        bias = partition_masses(terminal_distribution(graph, conc), built.partition)
        assert bias.outcome_masses["heads"] == Fraction(1, 2)
        assert bias.outcome_masses["tails"] == Fraction(1, 2)
        assert bias.bias == 0


@pytest.mark.parametrize("builder", GADGETS)
def test_gadget_two_extensible(builder):
    built = builder()
    graph = explore(built.system, built.metadata["max_space"] + 2)
    report = extensibility(graph)
    assert report.exact
    assert report.value == built.metadata["claimed_extensibility"] == 2


def test_big_seed_symbolic_identity_matches_closed_form():
    # P(heads) as a rational function equals (t^2 + 2th + h^2) / (2t^2 + 4th + 2h^2).
    built = big_seed_gadget()
    graph = explore(built.system, 10)
    fns = symbolic_outcome_functions(graph, built.partition)
    heads = fns["heads"]
    h = Polynomial.variable("h")
    t = Polynomial.variable("t")
    two = Polynomial.constant(2)
    four = Polynomial.constant(4)
    num = t * t + two * t * h + h * h
    den = two * t * t + four * t * h + two * h * h
    assert (heads.num * den - heads.den * num).is_zero()
    # And cross-multiplied equality with 1/2.
    assert (heads.num * two - heads.den).is_zero()


def test_big_seed_expected_space_is_ten():
    built = big_seed_gadget()
    graph = explore(built.system, 10)
    # Both terminals have 10 tiles, so expected space is 10 for any weights.
    for node in graph.terminals():
        assert len(node.assembly) == 10
    for conc in random_weight_maps(built.system, 5, seed=3):
        assert expected_space(graph, conc) == 10


def test_single_seed_deterministic_until_corner():
    built = single_seed_gadget()
    graph = explore(built.system, 20)
    for node in graph.nodes:
        has_corner = any(t.name == "S" for _, t in node.assembly.items())
        positions = {p for _, p in node.frontier}
        if not has_corner:
            assert len(positions) <= 1
            assert len(node.frontier) <= 1
    sizes = {len(n.assembly) for n in graph.terminals()}
    assert sizes == {15}


def test_single_seed_cooperative_slot_strength():
    # The middle slot takes two strength-1 bonds once a flip tile flanks it.
    built = single_seed_gadget()
    graph = explore(built.system, 20)
    h = built.system.tiles.get("h")
    slot2 = built.metadata["slots"]["slot2"]
    for node in graph.nodes:
        state = {p: t.name for p, t in node.assembly.items()}
        if state.get(built.metadata["slots"]["slot1"]) == "h" and state.get(
            built.metadata["slots"]["slot3"]
        ) == "t" and slot2 not in state:
            assert binding_strength(built.system, node.assembly, h, slot2) == 2
            break
    else:
        pytest.fail("never reached the flanked middle slot")


def test_temp1_gadget_bounded_with_spillover():
    built = temp1_gadget()
    graph = explore(built.system, built.metadata["max_space"] + 2)
    assert not graph.has_truncation
    for node in graph.terminals():
        assert len(node.assembly) == 16
    assert built.system.temperature == 1
    assert len(built.system.seed) == 1
