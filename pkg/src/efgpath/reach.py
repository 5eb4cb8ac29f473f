"""Reach probabilities of histories and infosets under a behavioral profile.

These are direct per-node walks and serve as the readable reference for the
batched kernels used by the path tracer.
"""

from __future__ import annotations

from .game import CHANCE, DECISION, Game, SubgameIndex
from .profiles import BehaviorProfile


def edge_factor(game: Game, profile: BehaviorProfile, node: str, k: int) -> float:
    """Probability that the actor at ``node`` takes its ``k``-th action."""
    n = game.nodes[node]
    if n.kind == CHANCE:
        return n.chance_probs[k]
    return float(profile[n.infoset][k])


def _product(game, profile, node, start=0, skip_player=None, skip_infoset=None) -> float:
    out = 1.0
    for anc, k in game.path[node][start:]:
        a = game.nodes[anc]
        if a.kind == DECISION and (a.owner == skip_player or a.infoset == skip_infoset):
            continue
        out *= edge_factor(game, profile, anc, k)
    return out


def omega(game: Game, profile: BehaviorProfile, node: str) -> float:
    return _product(game, profile, node)


def omega_excluding(game: Game, profile: BehaviorProfile, infoset: str, action: str,
                    node: str) -> float:
    """Reach of ``node`` with the factors taken at ``infoset`` treated as 1.

    The factor is skipped whatever action the path takes there; callers sum
    only over histories that take ``action``.
    """
    if action not in game.infosets[infoset].actions:
        raise ValueError(f"{action!r} is not an action of {infoset!r}")
    return _product(game, profile, node, skip_infoset=infoset)


def omega_infoset(game: Game, profile: BehaviorProfile, infoset: str) -> float:
    return sum(omega(game, profile, h) for h in game.infosets[infoset].members)


def s_excluded(game: Game, profile: BehaviorProfile, player: int, node: str) -> float:
    """Reach of ``node`` ignoring every factor contributed by ``player``."""
    return _product(game, profile, node, skip_player=player)


def s_excluded_infoset(game: Game, profile: BehaviorProfile, infoset: str) -> float:
    info = game.infosets[infoset]
    return sum(s_excluded(game, profile, info.player, h) for h in info.members)


def passes_through(game: Game, infoset: str, node: str) -> tuple[str, int] | None:
    """The (member, action index) where ``node``'s path crosses ``infoset``."""
    for anc, k in game.path[node]:
        if game.nodes[anc].infoset == infoset:
            return anc, k
    return None


def successor_infosets(game: Game, infoset: str, action: str | None = None) -> frozenset[str]:
    """First own infosets reached after ``action`` (all actions when None)."""
    key = ("succ", infoset, action)
    if key in game._cache:
        return game._cache[key]
    info = game.infosets[infoset]
    wanted = None if action is None else info.actions.index(action)
    found = set()
    for qid in game.infosets_of(info.player):
        if qid == infoset:
            continue
        ok = True
        for h in game.infosets[qid].members:
            last = None
            for anc, k in game.path[h]:
                a = game.nodes[anc]
                if a.kind == DECISION and a.owner == info.player:
                    last = (a.infoset, k)
            if last is None or last[0] != infoset or (wanted is not None and last[1] != wanted):
                ok = False
                break
        if ok:
            found.add(qid)
    out = frozenset(found)
    game._cache[key] = out
    return out


def later_own_infosets(game: Game, infoset: str) -> frozenset[str]:
    """Own infosets with a member history passing through ``infoset``."""
    key = ("later", infoset)
    if key in game._cache:
        return game._cache[key]
    info = game.infosets[infoset]
    out = frozenset(
        qid for qid in game.infosets_of(info.player)
        if qid != infoset and any(passes_through(game, infoset, h) for h in game.infosets[qid].members)
    )
    game._cache[key] = out
    return out


def c_kernel(game: Game, subindex: SubgameIndex, profile: BehaviorProfile, infoset: str,
             node: str, skip_own_infoset: bool = False) -> float:
    """Reach of ``node`` counted from the root of the infoset's smallest subgame."""
    start = game.depth(subindex.infoset_root[infoset])
    skip = infoset if skip_own_infoset else None
    return _product(game, profile, node, start=start, skip_infoset=skip)


def y_kernel(game: Game, subindex: SubgameIndex, profile: BehaviorProfile, infoset: str,
             node: str) -> float:
    """Like ``c_kernel`` but without the infoset owner's own factors."""
    start = game.depth(subindex.infoset_root[infoset])
    return _product(game, profile, node, start=start, skip_player=game.infosets[infoset].player)


def subgame_kernels(game: Game, subindex: SubgameIndex, profile: BehaviorProfile, player: int,
                    infoset: str, node: str) -> tuple[float, float]:
    start = game.depth(subindex.infoset_root[infoset])
    return (_product(game, profile, node, start=start),
            _product(game, profile, node, start=start, skip_player=player))


def c_kernel_infoset(game, subindex, profile, infoset) -> float:
    return sum(c_kernel(game, subindex, profile, infoset, h) for h in game.infosets[infoset].members)


def y_kernel_infoset(game, subindex, profile, infoset) -> float:
    return sum(y_kernel(game, subindex, profile, infoset, h) for h in game.infosets[infoset].members)
