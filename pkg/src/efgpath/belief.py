"""Belief systems induced by the other players' and chance's moves."""

from __future__ import annotations

import numpy as np

from .game import Game, SubgameIndex, subgame_decomposition
from .profiles import BehaviorProfile, BeliefSystem
from .reach import s_excluded, y_kernel

MODES = ("nash", "sgpe")


def member_kernels(game: Game, profile: BehaviorProfile, infoset: str, mode: str = "nash",
                   subindex: SubgameIndex | None = None) -> np.ndarray:
    """Per-member reach with the owner's own moves removed."""
    info = game.infosets[infoset]
    if mode == "nash":
        return np.array([s_excluded(game, profile, info.player, h) for h in info.members])
    if mode == "sgpe":
        sub = subindex or subgame_decomposition(game)
        return np.array([y_kernel(game, sub, profile, infoset, h) for h in info.members])
    raise ValueError(f"unknown mode {mode!r}")


def solve_beliefs(game: Game, profile: BehaviorProfile, mode: str = "nash",
                  fill: BeliefSystem | None = None,
                  subindex: SubgameIndex | None = None) -> BeliefSystem:
    """Normalize the member kernels; zero-mass infosets take ``fill`` (uniform by default)."""
    if mode == "sgpe" and subindex is None:
        subindex = subgame_decomposition(game)
    mu = fill.copy() if fill is not None else BeliefSystem(game)
    for iid in game.infosets:
        k = member_kernels(game, profile, iid, mode, subindex)
        total = k.sum()
        if total > 0:
            mu.flat[game.member_slice(iid)] = k / total
    return mu


def belief_residual(game: Game, profile: BehaviorProfile, mu: BeliefSystem, mode: str = "nash",
                    subindex: SubgameIndex | None = None) -> dict[str, np.ndarray]:
    """Per infoset: ``kernel(I)*mu(h) - kernel(h)`` for each member, then the simplex defect."""
    if mode == "sgpe" and subindex is None:
        subindex = subgame_decomposition(game)
    out = {}
    for iid in game.infosets:
        k = member_kernels(game, profile, iid, mode, subindex)
        m = mu[iid]
        out[iid] = np.append(k.sum() * m - k, m.sum() - 1.0)
    return out
