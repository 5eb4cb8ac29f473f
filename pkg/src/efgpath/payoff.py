"""Expected payoffs, infoset-restricted payoffs and the strategy splice."""

from __future__ import annotations

from .game import Game, SubgameIndex
from .profiles import Assessment, BehaviorProfile
from .reach import _product, later_own_infosets, omega, passes_through


def splice(game: Game, beta: BehaviorProfile, beta_tilde: BehaviorProfile,
           infoset: str) -> BehaviorProfile:
    """Owner's infosets lying after ``infoset`` take ``beta_tilde``; the rest keep ``beta``."""
    out = beta.copy()
    for qid in later_own_infosets(game, infoset):
        out.flat[game.action_slice(qid)] = beta_tilde[qid]
    return out


def expected_payoff(game: Game, profile: BehaviorProfile, player: int) -> float:
    return sum(game.nodes[z].payoffs[player - 1] * omega(game, profile, z) for z in game.terminals)


def payoff_through(game: Game, profile: BehaviorProfile, player: int, infoset: str,
                   action: str | None = None) -> float:
    """Payoff collected on terminals whose history crosses ``infoset``.

    With ``action`` only terminals taking it count, and the factor at the
    infoset is dropped.
    """
    k_want = None if action is None else game.infosets[infoset].actions.index(action)
    total = 0.0
    for z in game.terminals:
        hit = passes_through(game, infoset, z)
        if hit is None:
            continue
        u = game.nodes[z].payoffs[player - 1]
        if k_want is None:
            total += u * omega(game, profile, z)
        elif hit[1] == k_want:
            total += u * _product(game, profile, z, skip_infoset=infoset)
    return total


def conditional_weight(game: Game, assessment: Assessment, player: int, infoset: str, node: str,
                       action: str | None = None) -> float:
    """Belief-weighted probability of reaching terminal ``node`` from ``infoset``.

    ``assessment.beta`` supplies the moves after the member; with ``action``
    the member's own move is fixed to it.
    """
    hit = passes_through(game, infoset, node)
    if hit is None:
        return 0.0
    member, k = hit
    start = game.depth(member)
    if action is None:
        w = _product(game, assessment.beta, node, start=start)
    else:
        if game.infosets[infoset].actions.index(action) != k:
            return 0.0
        w = _product(game, assessment.beta, node, start=start + 1)
    return assessment.mu.at(infoset, member) * w


def conditional_payoff(game: Game, assessment: Assessment, player: int, infoset: str,
                       action: str | None = None) -> float:
    return sum(
        game.nodes[z].payoffs[player - 1] * conditional_weight(game, assessment, player, infoset, z, action)
        for z in game.terminals
    )


def subgame_conditional_payoff(game: Game, subindex: SubgameIndex, assessment: Assessment,
                               player: int, infoset: str, action: str | None = None) -> float:
    """As ``payoff_through`` with reach counted from the infoset's subgame root."""
    start = game.depth(subindex.infoset_root[infoset])
    k_want = None if action is None else game.infosets[infoset].actions.index(action)
    total = 0.0
    for z in game.terminals:
        hit = passes_through(game, infoset, z)
        if hit is None or (k_want is not None and hit[1] != k_want):
            continue
        skip = None if k_want is None else infoset
        total += game.nodes[z].payoffs[player - 1] * _product(
            game, assessment.beta, z, start=start, skip_infoset=skip)
    return total
