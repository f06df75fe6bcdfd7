"""Two-choice linear systems and their concentration-robust block simulations.

The expected-length base writes its target as a pattern of deterministic and
restart-on-tails steps.  A restart step returns the front to the start of the
pattern, so under uniform weights (every binary choice is a fair flip) the
expected number of placements works out to any chosen integer via a
binary-digit decomposition; the chain solver re-derives the value exactly.

The 5x4 simulation replaces every base tile with a block of twenty cells:
fifteen body cells (a deterministic snake, or an embedded single-seed flip
gadget when the step was a two-way choice) and a five-cell top lane (entry
tile plus a relay carrying the decided identity to the next block).  All
randomness goes through embedded flip gadgets, so the decided-type process of
the simulator matches the base process under uniform weights for every
concentration assignment over the simulator's tile set.
"""

from __future__ import annotations

from ..analysis.distribution import PartitionSpec, Rule
from ..analysis.twochoice import classify_two_choice, default_classify_depth, front_chain
from ..core import Assembly, Glue, TileSet, TileSystem, TileType
from ..errors import BuildParameterError, NotTwoChoiceError
from .types import BuiltSystem

BASE_TILE_BOUND_FACTOR = 10  # declared bound: |T| <= 10 * log2(m+1), checked by tests


def _pattern_for(target: int) -> list[str]:
    """D/R step pattern whose expected placement count is exactly `target`.

    Reading right to left, a D at level p (p = restart steps to its right)
    contributes 2^p and the j-th restart from the right contributes 2^j, so
    a full restart run gives 2^(r+1)-2 and the binary digits of the remainder
    are planted as D steps at the matching levels.
    """
    if target == 0:
        return []
    r = 0
    while (1 << (r + 2)) - 2 <= target:
        r += 1
    remainder = target - ((1 << (r + 1)) - 2)
    pattern: list[str] = []
    for level in range(r, -1, -1):
        if remainder & (1 << level):
            pattern.append("D")
        if level > 0:
            pattern.append("R")
    return pattern


def expected_placements(pattern: list[str]) -> int:
    """Independent evaluation of a pattern's expected placements (fair choices)."""
    value = 0
    restarts = 0
    for step in reversed(pattern):
        if step == "D":
            value += 1 << restarts
        else:
            restarts += 1
            value += 1 << restarts
    return value


def base_two_choice_expected_length(m: int, tau: int = 2) -> BuiltSystem:
    """Unidirectional two-choice line with expected length exactly m under
    uniform weights, using O(log m) tile types."""
    if m < 1:
        raise BuildParameterError("expected length must be at least 1")
    pattern = _pattern_for(m - 1)
    k = len(pattern)
    glues = [Glue(f"ln{i}", tau) for i in range(k + 1)]
    tiles = []
    seed_tile = TileType("origin", east=glues[0] if k else None)
    tiles.append(seed_tile)
    terminal_name = "origin"
    for j, step in enumerate(pattern):
        advance = TileType(
            f"go{j}", west=glues[j], east=glues[j + 1] if j + 1 < k else None
        )
        tiles.append(advance)
        if j + 1 == k:
            terminal_name = advance.name
        if step == "R":
            tiles.append(TileType(f"back{j}", west=glues[j], east=glues[0]))
    system = TileSystem(
        TileSet(tiles), Assembly({(0, 0): seed_tile}), tau, name=f"base_len_{m}"
    )
    partition = PartitionSpec((Rule("line", contains_label="origin"),))
    return BuiltSystem(
        system=system,
        partition=partition,
        name=f"base_two_choice_expected_length({m})",
        metadata={
            "expected_length": m,
            "pattern": "".join(pattern),
            "tile_count_bound_factor": BASE_TILE_BOUND_FACTOR,
            "terminal_tile": terminal_name,
            "claimed_extensibility": 1,
        },
    )


# ---------------------------------------------------------------------------
# 5x4 block simulation


def _chain_steps(base: BuiltSystem):
    """Front chain facts the block transform consumes.

    Returns (seed_name, steps) where steps maps each tile type (and 'seed')
    to its ordered successor-candidate list.  Requires a single-tile,
    east-growing base line.
    """
    system = base.system
    if len(system.seed) != 1:
        raise NotTwoChoiceError("block simulation expects a single-tile base seed")
    report = classify_two_choice(system, max_space=default_classify_depth(system))
    if not report.is_two_choice:
        raise NotTwoChoiceError("; ".join(report.failures) or "not a two-choice line")
    chain = front_chain(system)
    if chain.growth_step not in (None, (1, 0)):
        raise NotTwoChoiceError("block simulation expects an east-growing base line")
    ((_, seed_tile),) = list(system.seed.items())
    steps = dict(chain.choices)
    # The front after the lone seed tile is the seed frontier itself.
    steps.setdefault(seed_tile.name, list(chain.seed_choices))
    return seed_tile.name, steps


class _BlockEmitter:
    """Accumulates the simulator tile set with a consistent glue table."""

    def __init__(self):
        self.tiles: list[TileType] = []
        self.names: set[str] = set()
        self._glues: dict[str, Glue] = {}

    def glue(self, label: str, strength: int) -> Glue:
        existing = self._glues.get(label)
        if existing is None:
            existing = Glue(label, strength)
            self._glues[label] = existing
        elif existing.strength != strength:
            raise BuildParameterError(f"glue {label} redefined with a new strength")
        return existing

    def add(self, tile: TileType) -> TileType:
        if tile.name in self.names:
            raise BuildParameterError(f"duplicate simulator tile {tile.name}")
        self.names.add(tile.name)
        self.tiles.append(tile)
        return tile


# Deterministic body: a fifteen-cell snake through the block's lower rows.
# Listed as (cell, face-of-the-new-tile-that-bonds-its-predecessor).
_DET_SNAKE = [
    ((0, 2), "north"), ((0, 1), "north"), ((0, 0), "north"), ((1, 0), "west"),
    ((2, 0), "west"), ((3, 0), "west"), ((4, 0), "west"), ((4, 1), "south"),
    ((4, 2), "south"), ((3, 2), "east"), ((3, 1), "north"), ((2, 1), "east"),
    ((2, 2), "south"), ((1, 2), "east"), ((1, 1), "north"),
]

_OPP = {"north": "south", "south": "north", "east": "west", "west": "east"}


def _emit_det_body(em: _BlockEmitter, name: str, entry: Glue, relay_gate: Glue | None):
    """Deterministic snake for type `name`; cell (1,2) exposes relay_gate upward."""
    prev = entry
    for idx, (cell, bond_face) in enumerate(_DET_SNAKE):
        faces: dict = {bond_face: prev}
        if idx + 1 < len(_DET_SNAKE):
            nxt_cell, nxt_bond = _DET_SNAKE[idx + 1]
            prev = em.glue(f"b:{name}:{idx + 1}", 2)
            faces[_OPP[nxt_bond]] = prev
        if cell == (1, 2) and relay_gate is not None:
            faces["north"] = relay_gate
        em.add(TileType(f"b:{name}:{idx}", **faces))


def _emit_gadget_body(em: _BlockEmitter, key: str, entry: Glue):
    """Embedded single-seed flip gadget for the choice step `key`.

    Cells (relative): a strength-2 path winds from the entry cell (0,2) down
    and around to (3,1); the corner tile S attaches cooperatively and its two
    strength-1 faces open the outer flip slots (1,1) and (2,2) at once; the
    middle slot (1,2) needs one strength-1 bond from the entry column plus
    one from a placed flip tile.  Returns the outcome glues the middle slot
    exposes upward (h-side, t-side).
    """
    G = em.glue(f"g:{key}:G", 1)
    Esup = em.glue(f"g:{key}:E", 1)
    D = em.glue(f"g:{key}:D", 1)
    Q = em.glue(f"g:{key}:Q", 1)
    u = em.glue(f"g:{key}:u", 1)
    v = em.glue(f"g:{key}:v", 1)
    hn = em.glue(f"g:{key}:HN", 1)
    tn = em.glue(f"g:{key}:TN", 1)
    p = [em.glue(f"g:{key}:p{i}", 2) for i in range(10)]

    cells = [
        TileType(f"gb:{key}:0", north=entry, south=p[0], east=G),      # (0,2)
        TileType(f"gb:{key}:1", north=p[0], south=p[1]),               # (0,1)
        TileType(f"gb:{key}:2", north=p[1], east=p[2]),                # (0,0)
        TileType(f"gb:{key}:3", west=p[2], east=p[3], north=Esup),     # (1,0)
        TileType(f"gb:{key}:4", west=p[3], east=p[4], north=u),        # (2,0)
        TileType(f"gb:{key}:5", west=p[4], east=p[5]),                 # (3,0)
        TileType(f"gb:{key}:6", west=p[5], north=p[6]),                # (4,0)
        TileType(f"gb:{key}:7", south=p[6], north=p[7]),               # (4,1)
        TileType(f"gb:{key}:8", south=p[7], west=p[8]),                # (4,2)
        TileType(f"gb:{key}:9", east=p[8], south=p[9], west=Q),        # (3,2)
        TileType(f"gb:{key}:10", north=p[9], west=v),                  # (3,1)
        TileType(f"gb:{key}:S", south=u, east=v, west=G, north=D),     # (2,1)
        TileType(f"H:{key}", west=G, east=G, south=Esup, north=hn),
        TileType(f"T:{key}", west=G, east=Q, south=D, north=tn),
    ]
    for tile in cells:
        em.add(tile)
    return hn, tn


def robust_simulate(base: BuiltSystem) -> BuiltSystem:
    """Scale-(5x4) concentration-robust simulation of a two-choice line.

    Exactly twenty simulator types per base type.  Flip gadgets shared by a
    choice step are budgeted to the step's first candidate; the second
    candidate's body budget is filled with well-formed tiles whose entry glue
    is never exposed, keeping the flat per-tile accounting while every placed
    tile is one of the live types.
    """
    seed_name, steps = _chain_steps(base)
    em = _BlockEmitter()
    names = base.system.tiles.names()

    def state_key(cands: list[str]) -> str:
        return "+".join(cands)

    # Reached-kind per type; mixed-kind reachability would break the budget.
    kind: dict[str, str] = {}
    for cands in steps.values():
        for idx, c in enumerate(cands):
            new = "det" if len(cands) == 1 else ("first" if idx == 0 else "second")
            old = kind.get(c)
            if old is not None and old != new:
                raise NotTwoChoiceError(
                    f"tile {c!r} is reached through steps of different kinds"
                )
            kind[c] = new
    for name in names:
        kind.setdefault(name, "det")
    if kind[seed_name] != "det":
        raise NotTwoChoiceError("the seed tile type must not also be a choice candidate")

    def enter_glue(key: str) -> Glue:
        return em.glue(f"enter:{key}", 2)

    # Bodies. Deterministically reached types get their own snake; each
    # distinct choice pair gets one embedded gadget plus budget filler.
    outcome_glue: dict[str, Glue] = {}
    rs_key: dict[str, str] = {}
    relay_gate: dict[str, Glue] = {}
    for name in sorted(kind):
        if kind[name] == "det":
            relay_gate[name] = em.glue(f"rgate:{name}", 2)
            _emit_det_body(em, name, enter_glue(name), relay_gate[name])
    for cands in sorted({tuple(c) for c in steps.values() if len(c) == 2}):
        c1, c2 = cands
        key = state_key(list(cands))
        hn, tn = _emit_gadget_body(em, key, enter_glue(key))
        outcome_glue[c1] = hn
        outcome_glue[c2] = tn
        rs_key[c1] = key
        rs_key[c2] = key
        # Budget fillers: never attachable, see docstring.
        em.add(TileType(f"b:{c1}:spare", north=em.glue(f"dead:{c1}", 2)))
        _emit_det_body(em, c2, em.glue(f"dead:{c2}", 2), None)

    # Entry + relay lane per base type.
    for name in names:
        if kind[name] in ("first", "second"):
            r1_faces = {
                "south": outcome_glue[name],
                "west": em.glue(f"rs:{rs_key[name]}", 1),
            }
        else:
            r1_faces = {"south": relay_gate[name]}
        r1e = em.glue(f"r1e:{name}", 2)
        r2e = em.glue(f"r2e:{name}", 2)
        r3e = em.glue(f"r3e:{name}", 2)
        em.add(TileType(f"R1:{name}", east=r1e, **r1_faces))
        em.add(TileType(f"R2:{name}", west=r1e, east=r2e))
        em.add(TileType(f"R3:{name}", west=r2e, east=r3e))
        succ = steps.get(name, [])
        if succ:
            em.add(TileType(f"R4:{name}", west=r3e, east=em.glue(f"after:{name}", 2)))
            target = succ[0] if len(succ) == 1 else state_key(succ)
            e_faces = {
                "west": em.glue(f"after:{name}", 2),
                "south": enter_glue(target),
            }
            if len(succ) == 2:
                e_faces["east"] = em.glue(f"rs:{state_key(succ)}", 1)
            em.add(TileType(f"E:{name}", **e_faces))
        else:
            em.add(TileType(f"R4:{name}", west=r3e))
            # Terminal types re-spend their entry tile as the simulator seed:
            # it starts the base seed type's own block.
            em.add(TileType(f"E:{name}", south=enter_glue(seed_name)))

    terminals = [n for n in names if steps.get(n, []) == []]
    if not terminals:
        raise NotTwoChoiceError("base has no terminal tile type to anchor the simulator")
    seed_e_name = f"E:{sorted(terminals)[0]}"
    tile_set = TileSet(em.tiles)
    seed_tile = tile_set.get(seed_e_name)
    system = TileSystem(
        tile_set, Assembly({(0, 3): seed_tile}), 2, name=f"sim5x4({base.name})"
    )
    partition = _transformed_partition(steps)
    return BuiltSystem(
        system=system,
        partition=partition,
        name=f"sim5x4({base.name})",
        metadata={
            "scale": (5, 4),
            "base": base.name,
            "base_tile_count": len(names),
            "claimed_tile_count": 20 * len(names),
            "width": 4,
            "block_width": 5,
            "base_metadata": dict(base.metadata),
            "seed_tile": seed_e_name,
        },
    )


def _transformed_partition(steps: dict[str, list[str]]) -> PartitionSpec:
    """Label simulator terminals by the relay marker of their final block."""
    rules = [
        Rule(f"end:{name}", contains_label=f"R4:{name}")
        for name, succ in sorted(steps.items())
        if name != "seed" and not succ
    ]
    return PartitionSpec(tuple(rules))


def decode_regions(assembly: Assembly) -> list[str]:
    """Base tile sequence represented by a simulator terminal assembly."""
    decided: dict[int, str] = {}
    for (x, y), tile in assembly.items():
        if y == 3 and tile.name.startswith("R2:"):
            decided[x // 5] = tile.name.split(":", 1)[1]
    return [decided[i] for i in sorted(decided)]


def expected_length_system(n: int) -> BuiltSystem:
    """Width-4 system of expected length exactly n for every concentration.

    Simulates the expected-length-floor(n/5) base at scale 5x4 and appends
    n mod 5 deterministic columns after the unique final block.
    """
    if n < 5:
        raise BuildParameterError("expected length must be at least 5 for the 5x4 build")
    m, r = divmod(n, 5)
    base = base_two_choice_expected_length(m)
    sim = robust_simulate(base)
    terminal = base.metadata["terminal_tile"]
    system = sim.system
    if r:
        tiles = list(system.tiles)
        by_name = {t.name: t for t in tiles}
        tail = by_name[f"R4:{terminal}"]
        prev = Glue("rem:in", 2)
        tiles[tiles.index(tail)] = TileType(tail.name, west=tail.west, east=prev)
        for col in range(r):
            rows = [3, 2, 1, 0] if col % 2 == 0 else [0, 1, 2, 3]
            for step, row in enumerate(rows):
                faces: dict = {}
                faces["west" if step == 0 else ("north" if col % 2 == 0 else "south")] = prev
                if not (col == r - 1 and step == 3):
                    prev = Glue(f"rem:{col}:{row}", 2)
                    faces["east" if step == 3 else ("south" if col % 2 == 0 else "north")] = prev
                tiles.append(TileType(f"rem:{col}:{row}", **faces))
        system = TileSystem(
            TileSet(tiles),
            Assembly({(0, 3): by_name[sim.metadata["seed_tile"]]}),
            2,
            name=f"expected_len_{n}",
        )
    return BuiltSystem(
        system=system,
        partition=sim.partition,
        name=f"expected_length_system({n})",
        metadata={
            **sim.metadata,
            "target_length": n,
            "base_expected_length": m,
            "remainder": r,
            "base_pattern": base.metadata["pattern"],
        },
    )
