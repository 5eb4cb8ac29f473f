"""Random game families with sparse integer payoffs.

Players move in turn, one move each (Types A and B) or one move per layer
(Type C).  Information follows a fixed rule:

* Types A and C: a mover sees every earlier action except the one made
  immediately before it.
* Type B: a mover sees only the action made immediately before it.

Payoffs draw one zero-probability ``p ~ U[0, zero_prob_max]`` per game, then
each coordinate is 0 with probability ``p`` and otherwise a uniform integer
in ``payoff_range``.  Randomness comes from numpy's PCG64 seeded through a
SeedSequence; child stream 0 is reserved for structure (currently
deterministic), child stream 1 draws the payoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import Game, game_from_dict, serialize  # noqa: F401  (re-exported)

FAMILIES = ("A", "B", "C")


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    branching: tuple[int, ...]
    layers: int = 1
    seed: int = 0
    payoff_range: tuple[int, int] = (-10, 10)
    zero_prob_max: float = 0.5
    m: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "branching", tuple(int(b) for b in self.branching))
        if self.m is not None:
            object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.family not in FAMILIES:
            raise GenerationError(f"family must be one of {FAMILIES}")
        if self.n < 2:
            raise GenerationError("need at least two players")
        if len(self.branching) != self.n or min(self.branching) < 2:
            raise GenerationError("branching needs one entry >= 2 per player")
        if self.layers < 1 or (self.family != "C" and self.layers != 1):
            raise GenerationError("layers must be 1, or >= 1 for family C")
        lo, hi = self.payoff_range
        if lo > hi:
            raise GenerationError("empty payoff range")
        if not 0 <= self.zero_prob_max <= 1:
            raise GenerationError("zero_prob_max must lie in [0, 1]")


def _movers(spec: GenSpec) -> list[int]:
    return [d % spec.n for d in range(spec.n * spec.layers)]


def _observed(spec: GenSpec, path: tuple[int, ...]) -> tuple[int, ...]:
    d = len(path)
    if spec.family == "B":
        return path[d - 1:] if d else ()
    return path[:max(d - 1, 0)]


def infoset_counts(spec: GenSpec) -> tuple[int, ...]:
    """Infosets per player implied by the family rule."""
    movers = _movers(spec)
    counts = [0] * spec.n
    for d, player in enumerate(movers):
        if spec.family == "B":
            counts[player] += spec.branching[movers[d - 1]] if d else 1
        else:
            counts[player] += math.prod(spec.branching[movers[k]] for k in range(d - 1))
    return tuple(counts)


def generate(spec: GenSpec) -> Game:
    counts = infoset_counts(spec)
    if spec.m is not None and tuple(spec.m) != counts:
        raise GenerationError(f"family {spec.family} with branching {spec.branching} "
                              f"gives infoset counts {counts}, not {tuple(spec.m)}")
    movers = _movers(spec)
    seeds = np.random.SeedSequence(spec.seed).spawn(2)
    payoff_rng = np.random.Generator(np.random.PCG64(seeds[1]))

    node_id = lambda path: "r" + "".join(f".{a}" for a in path)
    nodes: dict[str, dict] = {}
    infosets: dict[str, dict] = {}
    keys: dict[tuple, str] = {}
    made = [0] * spec.n
    frontier = [()]
    for d, player in enumerate(movers):
        nxt = []
        b = spec.branching[player]
        labels = [f"a{k}" for k in range(b)]
        for path in frontier:
            key = (d, _observed(spec, path))
            iid = keys.get(key)
            if iid is None:
                made[player] += 1
                iid = keys[key] = f"p{player + 1}.{made[player]}"
                infosets[iid] = {"player": player + 1, "members": [], "actions": labels}
            infosets[iid]["members"].append(node_id(path))
            kids = [path + (k,) for k in range(b)]
            nodes[node_id(path)] = {
                "kind": "decision", "owner": player + 1, "infoset": iid,
                "actions": [{"label": labels[k], "child": node_id(c)} for k, c in enumerate(kids)],
            }
            nxt.extend(kids)
        frontier = nxt
    terminals = frontier

    lo, hi = spec.payoff_range
    p = payoff_rng.uniform(0.0, spec.zero_prob_max)
    shape = (len(terminals), spec.n)
    zero = payoff_rng.random(shape) < p
    values = payoff_rng.integers(lo, hi + 1, size=shape)
    payoffs = np.where(zero, 0, values)
    for path, row in zip(terminals, payoffs):
        nodes[node_id(path)] = {"kind": "terminal", "payoffs": [float(x) for x in row]}
    return game_from_dict({"num_players": spec.n, "root": "r", "nodes": nodes, "infosets": infosets})


def zero_probability(spec: GenSpec) -> float:
    """The sparsity level drawn for ``spec`` (same stream as ``generate``)."""
    seeds = np.random.SeedSequence(spec.seed).spawn(2)
    return float(np.random.Generator(np.random.PCG64(seeds[1])).uniform(0.0, spec.zero_prob_max))
