"""Unidirectional two-choice line systems: recognition and exact expected length.

A system qualifies when it can only ever grow at one location, never offers
more than two candidate tiles, and every producible assembly is a straight
width-1 line.  For such systems the future depends only on the tile type at
the growth front, so expected length reduces to a finite absorbing chain over
front types, solved exactly by Gaussian elimination over rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..concentration import ConcentrationMap, frontier_weight
from ..core import Assembly, TileSystem, frontier
from ..errors import NonTerminatingChainError, NotTwoChoiceError
from .statespace import explore


def is_line(assembly: Assembly) -> bool:
    """True iff the placements form a contiguous straight 1-wide segment."""
    positions = sorted(assembly.positions())
    if len(positions) == 1:
        return True
    xs = {p[0] for p in positions}
    ys = {p[1] for p in positions}
    if len(ys) == 1:
        lo, hi = min(xs), max(xs)
        return len(xs) == hi - lo + 1 == len(positions)
    if len(xs) == 1:
        lo, hi = min(ys), max(ys)
        return len(ys) == hi - lo + 1 == len(positions)
    return False


@dataclass
class TwoChoiceReport:
    is_two_choice: bool
    bounded_verification: bool  # True when exploration was truncated.
    failures: list[str] = field(default_factory=list)
    max_frontier: int = 0
    max_positions: int = 0


def classify_two_choice(system: TileSystem, max_space: int) -> TwoChoiceReport:
    """Check the three defining conditions on every explored assembly.

    Unbounded systems are checked up to max_space and the verdict is flagged
    as bounded verification.
    """
    graph = explore(system, max_space, allow_truncation=True)
    failures: list[str] = []
    max_frontier = 0
    max_positions = 0
    for node in graph.nodes:
        positions = {pos for _, pos in node.frontier}
        max_frontier = max(max_frontier, len(node.frontier))
        max_positions = max(max_positions, len(positions))
        if len(positions) > 1 and len(failures) < 3:
            failures.append(
                f"assembly of size {node.size} can grow at {len(positions)} locations"
            )
        if len(node.frontier) > 2 and len(failures) < 3:
            failures.append(
                f"assembly of size {node.size} has {len(node.frontier)} frontier choices"
            )
        if not is_line(node.assembly) and len(failures) < 3:
            failures.append(f"assembly of size {node.size} is not a width-1 line")
    return TwoChoiceReport(
        is_two_choice=not failures,
        bounded_verification=graph.has_truncation,
        failures=failures,
        max_frontier=max_frontier,
        max_positions=max_positions,
    )


@dataclass
class FrontChain:
    """Transition structure over front tile types.

    seed_choices lists the tile type names attachable to the seed; choices
    maps each reachable front type to the type names attachable after it
    (empty list = the line ends there).  growth_step is the lattice vector
    from one placement to the next.
    """

    seed_size: int
    seed_choices: list[str]
    choices: dict[str, list[str]]
    growth_step: tuple[int, int] | None

    def is_terminal_state(self, name: str) -> bool:
        return not self.choices[name]


def front_chain(system: TileSystem) -> FrontChain:
    """Walk the front-type graph, expanding each tile type exactly once.

    Transitions out of a front type are computed on the first concrete
    assembly realizing it; for a two-choice line system they depend only on
    the front type, which property tests cross-check against full exploration.
    """
    seed_entries = frontier(system, system.seed)
    positions = {pos for _, pos in seed_entries}
    if len(positions) > 1:
        raise NotTwoChoiceError("seed can grow at more than one location")
    if len(seed_entries) > 2:
        raise NotTwoChoiceError("seed offers more than two choices")
    seed_choices = [t.name for t, _ in seed_entries]
    choices: dict[str, list[str]] = {}
    growth_step: tuple[int, int] | None = None
    queue: list[tuple[str, Assembly, tuple[int, int]]] = []
    for tile, pos in seed_entries:
        queue.append((tile.name, system.seed.with_tile(pos, tile), pos))
    while queue:
        name, assembly, pos = queue.pop(0)
        if name in choices:
            continue
        entries = frontier(system, assembly)
        front_positions = {p for _, p in entries}
        if len(front_positions) > 1:
            raise NotTwoChoiceError(f"front type {name!r} opens multiple growth locations")
        if len(entries) > 2:
            raise NotTwoChoiceError(f"front type {name!r} offers more than two choices")
        if entries:
            next_pos = entries[0][1]
            step = (next_pos[0] - pos[0], next_pos[1] - pos[1])
            if growth_step is None:
                growth_step = step
            elif growth_step != step:
                raise NotTwoChoiceError("growth direction is not unidirectional")
        choices[name] = [t.name for t, _ in entries]
        for tile, p in entries:
            if tile.name not in choices:
                queue.append((tile.name, assembly.with_tile(p, tile), p))
    return FrontChain(
        seed_size=len(system.seed),
        seed_choices=seed_choices,
        choices=choices,
        growth_step=growth_step,
    )


def gaussian_solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Exact solve of a square system by elimination with pivot search."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise NonTerminatingChainError("expectation system is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [v / inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _check_termination_reachable(chain: FrontChain) -> None:
    """Every reachable front state must have a path to a line end."""
    reaches_end: set[str] = {s for s, succ in chain.choices.items() if not succ}
    changed = True
    while changed:
        changed = False
        for state, succ in chain.choices.items():
            if state not in reaches_end and any(t in reaches_end for t in succ):
                reaches_end.add(state)
                changed = True
    stuck = [s for s in chain.choices if s not in reaches_end]
    if stuck:
        raise NonTerminatingChainError(
            f"states {sorted(stuck)} can never reach a terminal line"
        )


def chain_expected_placements(chain: FrontChain, conc: ConcentrationMap) -> Fraction:
    """Expected number of placements after the seed, solved exactly."""
    _check_termination_reachable(chain)
    states = sorted(s for s, succ in chain.choices.items() if succ)
    index = {s: i for i, s in enumerate(states)}

    def transition_row(succ: list[str]) -> dict[str, Fraction]:
        total = sum((conc[t] for t in succ), Fraction(0))
        return {t: conc[t] / total for t in succ}

    n = len(states)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [Fraction(1)] * n
    for s in states:
        i = index[s]
        matrix[i][i] += 1
        for t, p in transition_row(chain.choices[s]).items():
            if t in index:
                matrix[i][index[t]] -= p
    solution = gaussian_solve(matrix, rhs) if states else []
    expectations = {s: solution[index[s]] for s in states}
    for s, succ in chain.choices.items():
        if not succ:
            expectations[s] = Fraction(0)
    if not chain.seed_choices:
        return Fraction(0)
    total = Fraction(0)
    row = transition_row(chain.seed_choices)
    for t, p in row.items():
        total += p * (1 + expectations[t])
    return total


def default_classify_depth(system: TileSystem) -> int:
    """Space bound for bounded two-choice verification.

    Restarting line systems have exponentially many distinct histories in the
    exploration depth, so the check samples a shallow prefix; any structural
    violation shows up within a few attachments of the offending front type.
    """
    return len(system.seed) + 10


def twochoice_expected_length(
    system: TileSystem,
    conc: ConcentrationMap,
    classify_max_space: int | None = None,
) -> Fraction:
    """Expected terminal line length (tiles, seed included), exact.

    Raises NotTwoChoiceError when bounded classification refutes the
    two-choice line conditions, and NonTerminatingChainError when some state
    cannot reach a line end.
    """
    if classify_max_space is None:
        classify_max_space = default_classify_depth(system)
    report = classify_two_choice(system, classify_max_space)
    if not report.is_two_choice:
        raise NotTwoChoiceError("; ".join(report.failures))
    conc.covers(system)
    chain = front_chain(system)
    return chain.seed_size + chain_expected_placements(chain, conc)
