"""Symbolic fairness proofs and their randomized counterpart.

The terminal mass of each outcome is computed as a rational function with one
variable per tile type, by propagating (numerator, denominator) polynomial
pairs through the state DAG.  Two outcomes are identically equal iff the
cross-multiplied difference num_x*den_y - num_y*den_x expands to the zero
polynomial; no GCD or factorization is needed at the sizes involved here.

The randomized verifier evaluates the same identity at uniformly random
integer points instead of expanding it; a nonzero value is a hard
counterexample and an all-zero run bounds the failure probability by
(degree / range)^trials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..concentration import ConcentrationMap
from ..core import TileSystem
from ..errors import TruncationError
from ..rng import substream
from .distribution import PartitionSpec, partition_masses, terminal_distribution
from .statespace import StateGraph, explore

# A monomial is a sorted tuple of (variable name, positive exponent) pairs.
Monomial = tuple[tuple[str, int], ...]

PIT_RANGE = 1 << 32


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @staticmethod
    def constant(value: Fraction | int) -> "Polynomial":
        value = Fraction(value)
        return Polynomial({(): value} if value else {})

    @staticmethod
    def variable(name: str) -> "Polynomial":
        return Polynomial({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Polynomial(terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) - c
        return Polynomial(terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _merge(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(out)

    def scale(self, k: Fraction | int) -> "Polynomial":
        k = Fraction(k)
        return Polynomial({m: c * k for m, c in self.terms.items()})

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self) -> set[str]:
        return {name for m in self.terms for name, _ in m}

    def evaluate(self, point: dict[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            value = c
            for name, exp in m:
                value *= point[name] ** exp
            total += value
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            factors = [f"{n}^{e}" if e > 1 else n for n, e in m]
            bits.append("*".join([str(c)] + factors) if factors else str(c))
        return " + ".join(bits)


def _merge(m1: Monomial, m2: Monomial) -> Monomial:
    exps: dict[str, int] = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


ONE = Polynomial.constant(1)
ZERO = Polynomial()


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of two polynomials; equality is tested by cross-multiplication."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    @staticmethod
    def constant(value: Fraction | int) -> "RationalFunction":
        return RationalFunction(Polynomial.constant(value), ONE)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def equals(self, other: "RationalFunction") -> bool:
        return (self.num * other.den - other.num * self.den).is_zero()

    def difference_poly(self, other: "RationalFunction") -> Polynomial:
        return self.num * other.den - other.num * self.den

    def evaluate(self, point: dict[str, Fraction]) -> Fraction:
        return self.num.evaluate(point) / self.den.evaluate(point)


RF_ZERO = RationalFunction(ZERO, ONE)
RF_ONE = RationalFunction(ONE, ONE)


def symbolic_outcome_functions(
    graph: StateGraph, partition: PartitionSpec
) -> dict[str, RationalFunction]:
    """One rational function per outcome, in one variable per tile type.

    Deterministic steps (frontier of size one) contribute the factor w/w = 1
    and are skipped, which keeps degrees proportional to the number of genuine
    competitions rather than the assembly size.
    """
    if graph.has_truncation:
        raise TruncationError("symbolic analysis requires a fully explored system")
    masses: list[RationalFunction | None] = [None] * len(graph.nodes)
    masses[0] = RF_ONE
    outcome_fns: dict[str, RationalFunction] = {}
    for node in graph.in_size_order():
        mass = masses[node.index]
        if mass is None:
            continue
        if node.is_terminal:
            label = partition.label(node.assembly)
            prev = outcome_fns.get(label)
            outcome_fns[label] = mass if prev is None else prev + mass
            continue
        if len(node.frontier) == 1:
            factors = {node.edges[0][0]: RF_ONE} if node.edges else {}
        else:
            den = Polynomial()
            for tile, _pos in node.frontier:
                den = den + Polynomial.variable(tile.name)
            factors = {}
            for child_index, tile_name, _pos in node.edges:
                f = RationalFunction(Polynomial.variable(tile_name), den)
                if child_index in factors:
                    factors[child_index] = factors[child_index] + f
                else:
                    factors[child_index] = f
        for child_index, factor in factors.items():
            contribution = mass * factor
            prev = masses[child_index]
            masses[child_index] = contribution if prev is None else prev + contribution
    return outcome_fns


@dataclass
class FairnessVerdict:
    """Outcome of a fairness check.

    fair=True means all outcome masses are identical as rational functions
    (symbolic mode) or at every sampled point (randomized mode, with the
    reported failure bound).  fair=False carries a positive integer weight
    point and the exact outcome masses there.
    """

    fair: bool
    outcome_functions: dict[str, RationalFunction] | None = None
    counterexample_weights: dict[str, Fraction] | None = None
    counterexample_masses: dict[str, Fraction] | None = None
    failure_bound: Fraction | None = None
    trials: int | None = None


def _masses_at_point(
    system: TileSystem, graph: StateGraph, partition: PartitionSpec, weights: dict[str, Fraction]
) -> dict[str, Fraction]:
    conc = ConcentrationMap(weights)
    report = terminal_distribution(graph, conc)
    return partition_masses(report, partition).outcome_masses


def verify_fairness_symbolic(
    system: TileSystem, partition: PartitionSpec, max_space: int
) -> FairnessVerdict:
    """Prove that every outcome has identical mass for all concentrations, or refute.

    Refutation searches seeded random integer points until the expanded
    difference polynomial evaluates nonzero (it must, being a nonzero
    polynomial hit by points from a range far beyond its degree).
    """
    graph = explore(system, max_space, allow_truncation=False)
    fns = symbolic_outcome_functions(graph, partition)
    labels = sorted(fns)
    names = system.tiles.names()
    reference = fns[labels[0]]
    for label in labels[1:]:
        diff = reference.difference_poly(fns[label])
        if diff.is_zero():
            continue
        stream = substream(20_17, 1)
        while True:
            point = {name: Fraction(stream.randint(1, PIT_RANGE)) for name in names}
            if diff.evaluate(point) != 0:
                return FairnessVerdict(
                    fair=False,
                    outcome_functions=fns,
                    counterexample_weights=point,
                    counterexample_masses=_masses_at_point(system, graph, partition, point),
                )
    return FairnessVerdict(fair=True, outcome_functions=fns)


def verify_fairness_pit(
    system: TileSystem,
    partition: PartitionSpec,
    max_space: int,
    trials: int,
    rng_seed: int,
) -> FairnessVerdict:
    """Randomized identity test: equal outcome masses at random integer weights.

    Each trial draws one weight per tile type uniformly from [1, 2^32].  Any
    inequality refutes robustness exactly; agreement on all trials accepts
    with failure probability at most (degree_bound / 2^32)^trials by the
    usual random-evaluation bound for nonzero polynomials.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    graph = explore(system, max_space, allow_truncation=False)
    names = system.tiles.names()
    # The cross-multiplied identity has total degree at most one per
    # attachment step in each of numerator and denominator.
    degree_bound = 2 * max_space
    for trial in range(trials):
        stream = substream(rng_seed, trial)
        point = {name: Fraction(stream.randint(1, PIT_RANGE)) for name in names}
        masses = _masses_at_point(system, graph, partition, point)
        values = sorted(masses.values())
        if values[0] != values[-1]:
            return FairnessVerdict(
                fair=False,
                counterexample_weights=point,
                counterexample_masses=masses,
                trials=trial + 1,
            )
    return FairnessVerdict(
        fair=True,
        failure_bound=Fraction(degree_bound, PIT_RANGE) ** trials,
        trials=trials,
    )
