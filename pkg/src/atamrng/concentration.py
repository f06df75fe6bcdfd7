"""Concentration assignments over a tile set, fixed or varying with assembly size.

Weights are unnormalized positive rationals.  Nothing downstream ever needs a
normalized distribution: attachment probabilities are weight ratios, which are
invariant under rescaling, so normalization would only churn fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .core import Assembly, TileSystem, frontier
from .errors import ConcentrationError, NotASuccessorError


class ConcentrationMap:
    """Positive weight per tile type name."""

    def __init__(self, weights: Mapping[str, Fraction | int]):
        w: dict[str, Fraction] = {}
        for name, value in weights.items():
            value = Fraction(value)
            if value <= 0:
                raise ConcentrationError(f"weight for {name!r} must be positive, got {value}")
            w[name] = value
        if not w:
            raise ConcentrationError("concentration map must not be empty")
        self._weights = w

    def __getitem__(self, name: str) -> Fraction:
        try:
            return self._weights[name]
        except KeyError:
            raise ConcentrationError(f"no weight for tile type {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._weights

    def items(self):
        return sorted(self._weights.items())

    def names(self) -> set[str]:
        return set(self._weights)

    def scaled(self, factor: Fraction | int) -> "ConcentrationMap":
        factor = Fraction(factor)
        return ConcentrationMap({n: w * factor for n, w in self._weights.items()})

    def normalized(self) -> dict[str, Fraction]:
        total = sum(self._weights.values())
        return {n: w / total for n, w in sorted(self._weights.items())}

    def covers(self, system: TileSystem) -> None:
        missing = [n for n in system.tiles.names() if n not in self._weights]
        if missing:
            raise ConcentrationError(f"concentration map missing tile types: {missing}")

    def __eq__(self, other) -> bool:
        return isinstance(other, ConcentrationMap) and self._weights == other._weights

    def __repr__(self) -> str:
        return f"ConcentrationMap({self._weights!r})"


@dataclass(frozen=True)
class UnstableSchedule:
    """Size-indexed family of concentration maps.

    The map in force at assembly size z is the piece with the largest
    from_size <= z; the first piece must start at size 1 so every size is
    covered by exactly one piece.
    """

    pieces: tuple[tuple[int, ConcentrationMap], ...]

    def __post_init__(self):
        if not self.pieces:
            raise ConcentrationError("schedule needs at least one piece")
        sizes = [s for s, _ in self.pieces]
        if sizes[0] != 1:
            raise ConcentrationError("first schedule piece must start at size 1")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ConcentrationError("schedule pieces must have strictly increasing from_size")

    def at_size(self, size: int) -> ConcentrationMap:
        chosen = self.pieces[0][1]
        for from_size, weights in self.pieces:
            if from_size <= size:
                chosen = weights
            else:
                break
        return chosen

    def covers(self, system: TileSystem) -> None:
        for _, weights in self.pieces:
            weights.covers(system)


Concentrations = ConcentrationMap | UnstableSchedule


def weights_at(conc: Concentrations, size: int) -> ConcentrationMap:
    """The weight map governing an attachment from an assembly of `size` tiles."""
    if isinstance(conc, UnstableSchedule):
        return conc.at_size(size)
    return conc


def uniform(system: TileSystem) -> ConcentrationMap:
    """Equal weight 1 for every tile type."""
    return ConcentrationMap({name: Fraction(1) for name in system.tiles.names()})


def frontier_weight(weights: ConcentrationMap, entries) -> Fraction:
    """Denominator of the attachment distribution: one summand per (type, position) pair."""
    total = Fraction(0)
    for tile, _pos in entries:
        total += weights[tile.name]
    return total


def trans_prob(
    system: TileSystem,
    conc_at_size: ConcentrationMap,
    a: Assembly,
    b: Assembly,
) -> Fraction:
    """Probability that assembly a grows into b in one step.

    b must extend a by exactly one tile.  The denominator counts each
    attachable (type, position) pair once, so a type attachable at two
    positions contributes its weight twice.
    """
    if len(b) != len(a) + 1:
        raise NotASuccessorError("b must extend a by exactly one tile")
    added = [(pos, b.tile_at(pos)) for pos in b.positions() if pos not in a]
    if len(added) != 1:
        raise NotASuccessorError("b must extend a by exactly one tile")
    (pos, tile) = added[0]
    for p in a.positions():
        if b.tile_at(p) != a.tile_at(p):
            raise NotASuccessorError("b changes tiles of a")
    entries = frontier(system, a)
    if (tile, pos) not in entries:
        raise NotASuccessorError(f"{tile.name!r} at {pos} is not attachable to a")
    return conc_at_size[tile.name] / frontier_weight(conc_at_size, entries)


def geometric_ladder(tile_order: list[str], ratio: Fraction | int) -> ConcentrationMap:
    """Weights 1, r, r^2, ... along `tile_order`; the adversary's steep ladder.

    With a ratio far above the tile count, the heaviest attachable type wins
    every competition with high probability.
    """
    ratio = Fraction(ratio)
    if not tile_order:
        raise ConcentrationError("tile order must be non-empty")
    if ratio <= 1:
        raise ConcentrationError("ladder ratio must exceed 1")
    weights: dict[str, Fraction] = {}
    w = Fraction(1)
    for name in tile_order:
        if name in weights:
            raise ConcentrationError(f"duplicate tile name {name!r} in ladder order")
        weights[name] = w
        w *= ratio
    return ConcentrationMap(weights)


def dominant_schedule(
    system: TileSystem,
    preference: Callable[[int], str],
    n: int,
    max_size: int = 64,
) -> UnstableSchedule:
    """Schedule that gives the preferred type at each size weight 1 - 1/(100 n^2).

    The remaining mass 1/(100 n^2) is split evenly among the other types, so a
    preferred attachable type beats any competitor overwhelmingly.  Pieces are
    generated for sizes 1..max_size; the last piece stays in force beyond.
    """
    if n < 1:
        raise ConcentrationError("space bound n must be at least 1")
    names = system.tiles.names()
    if len(names) < 2:
        raise ConcentrationError("dominant schedule needs at least two tile types")
    dominant_weight = Fraction(1) - Fraction(1, 100 * n * n)
    minor_weight = Fraction(1, 100 * n * n) / (len(names) - 1)
    pieces = []
    for size in range(1, max_size + 1):
        chosen = preference(size)
        if chosen not in system.tiles:
            raise ConcentrationError(f"preference names unknown tile type {chosen!r}")
        weights = {name: (dominant_weight if name == chosen else minor_weight) for name in names}
        pieces.append((size, ConcentrationMap(weights)))
    return UnstableSchedule(tuple(pieces))
