"""Certify or refute equilibrium candidates and build their companion assessment.

A profile beta is a Nash equilibrium exactly when some companion
(beta_tilde, mu) makes both payoff blocks complementary with beta and
beta_tilde and mu solves the self-independent belief equations.  The
checkers below recover the multipliers from a given triple and report the
worst violation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .belief import belief_residual, solve_beliefs
from .game import Game, SubgameIndex, subgame_decomposition
from .payoff import (conditional_payoff, expected_payoff, payoff_through, splice,
                     subgame_conditional_payoff)
from .profiles import Assessment, BehaviorProfile, BeliefSystem, DimensionError
from .reach import c_kernel_infoset, omega_infoset

BRUTE_FORCE_CAP = 10**6


def default_tol(game: Game) -> float:
    return 1e-6 * (1.0 + game.max_abs_payoff())


@dataclass
class InfosetReport:
    infoset: str
    player: int
    zeta: float
    lam: np.ndarray
    zeta_tilde: float
    lam_tilde: np.ndarray
    comp: np.ndarray
    comp_tilde: np.ndarray
    belief: np.ndarray

    def worst(self) -> float:
        return float(max(self.comp.max(initial=0.0), self.comp_tilde.max(initial=0.0),
                         np.abs(self.belief).max(initial=0.0)))

    def to_dict(self) -> dict:
        f = lambda v: [float(x) for x in v]
        return {"player": self.player, "zeta": self.zeta, "lambda": f(self.lam),
                "zeta_tilde": self.zeta_tilde, "lambda_tilde": f(self.lam_tilde),
                "complementarity": f(self.comp), "complementarity_tilde": f(self.comp_tilde),
                "belief_residual": f(self.belief)}


@dataclass
class VerifyReport:
    refinement: str
    tol: float
    passed: bool
    max_residual: float
    worst_infoset: str | None
    infosets: dict[str, InfosetReport] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"refinement": self.refinement, "tol": self.tol, "passed": self.passed,
                "max_residual": self.max_residual, "worst_infoset": self.worst_infoset,
                "infosets": {k: v.to_dict() for k, v in self.infosets.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        where = f" at {self.worst_infoset}" if self.worst_infoset else ""
        return f"{self.refinement}: {verdict} (max residual {self.max_residual:.3e}{where}, tol {self.tol:.1e})"


def _bind(game: Game, profile, cls):
    size = cls._size(game)
    if profile.flat.shape != (size,):
        raise DimensionError(f"{cls.__name__} has {profile.flat.size} entries, game needs {size}")
    return profile if profile.game is game else cls(game, profile.flat)


def _bind_assessment(game: Game, a: Assessment) -> Assessment:
    return Assessment(_bind(game, a.beta, BehaviorProfile), _bind(game, a.beta_tilde, BehaviorProfile),
                      _bind(game, a.mu, BeliefSystem))


def _reached(game, profile, infoset, mode, subindex) -> float:
    if mode == "nash":
        return omega_infoset(game, profile, infoset)
    return c_kernel_infoset(game, subindex, profile, infoset)


def construct_companion(game: Game, profile: BehaviorProfile, mode: str = "nash",
                        reach_tol: float = 0.0, subindex: SubgameIndex | None = None
                        ) -> tuple[BehaviorProfile, BeliefSystem]:
    """Companion (beta_tilde, mu) for ``profile``.

    Beliefs come from the own-move-free kernels (uniform where they vanish).
    ``beta_tilde`` copies ``profile`` where the infoset is reached with
    probability above ``reach_tol``; elsewhere, deepest infosets first, it is
    the lowest-index best reply against the beliefs.
    """
    if mode not in ("nash", "sgpe"):
        raise ValueError(f"unknown mode {mode!r}")
    profile = _bind(game, profile, BehaviorProfile)
    if mode == "sgpe" and subindex is None:
        subindex = subgame_decomposition(game)
    mu = solve_beliefs(game, profile, mode, subindex=subindex)
    beta_tilde = profile.copy()
    unreached = [iid for iid in game.infosets
                 if _reached(game, profile, iid, mode, subindex) <= reach_tol]
    unreached.sort(key=lambda iid: -max(game.depth(h) for h in game.infosets[iid].members))
    for iid in unreached:
        info = game.infosets[iid]
        spliced = splice(game, profile, beta_tilde, iid)
        a = Assessment(spliced, beta_tilde, mu)
        values = [conditional_payoff(game, a, info.player, iid, act) for act in info.actions]
        best = int(np.argmax(values))
        vec = np.zeros(len(info.actions))
        vec[best] = 1.0
        beta_tilde.flat[game.action_slice(iid)] = vec
    return beta_tilde, mu


def _check(game: Game, assessment: Assessment, tol: float | None, mode: str,
           subindex: SubgameIndex | None) -> VerifyReport:
    a = _bind_assessment(game, assessment)
    tol = default_tol(game) if tol is None else tol
    beliefs = belief_residual(game, a.beta, a.mu, mode, subindex)
    out = {}
    for iid, info in game.infosets.items():
        sp = Assessment(splice(game, a.beta, a.beta_tilde, iid), a.beta_tilde, a.mu)
        if mode == "nash":
            first = [payoff_through(game, sp.beta, info.player, iid, act) for act in info.actions]
        else:
            first = [subgame_conditional_payoff(game, subindex, sp, info.player, iid, act)
                     for act in info.actions]
        second = [conditional_payoff(game, sp, info.player, iid, act) for act in info.actions]
        first, second = np.array(first), np.array(second)
        lam, lam_t = first.max() - first, second.max() - second
        out[iid] = InfosetReport(iid, info.player, float(first.max()), lam, float(second.max()), lam_t,
                                 a.beta[iid] * lam, a.beta_tilde[iid] * lam_t, beliefs[iid])
    worst_id, worst = None, 0.0
    for iid, rep in out.items():
        if rep.worst() > worst:
            worst_id, worst = iid, rep.worst()
    simplex = max(a.beta.simplex_defect(), a.beta_tilde.simplex_defect())
    passed = worst <= tol and simplex <= max(tol, 1e-10)
    refinement = "nash" if mode == "nash" else "sgpe"
    return VerifyReport(refinement, tol, passed, worst, worst_id, out)


def check_nash(game: Game, assessment: Assessment, tol: float | None = None) -> VerifyReport:
    return _check(game, assessment, tol, "nash", None)


def check_sgpe(game: Game, subindex: SubgameIndex | None, assessment: Assessment,
               tol: float | None = None) -> VerifyReport:
    return _check(game, assessment, tol, "sgpe", subindex or subgame_decomposition(game))


def check_semi_sequential(game: Game, beta: BehaviorProfile, mu: BeliefSystem,
                          tol: float | None = None, mode: str = "nash",
                          subindex: SubgameIndex | None = None) -> VerifyReport:
    """Single-block rule: every action played above ``tol`` is a best reply given ``mu``.

    ``mu`` must also solve the belief equations of ``mode``.  Payoffs use
    ``beta`` itself at later infosets, with no separate companion.
    """
    beta = _bind(game, beta, BehaviorProfile)
    mu = _bind(game, mu, BeliefSystem)
    tol = default_tol(game) if tol is None else tol
    if mode == "sgpe" and subindex is None:
        subindex = subgame_decomposition(game)
    beliefs = belief_residual(game, beta, mu, mode, subindex)
    asm = Assessment(beta, beta, mu)
    out = {}
    for iid, info in game.infosets.items():
        vals = np.array([conditional_payoff(game, asm, info.player, iid, act) for act in info.actions])
        lam = vals.max() - vals
        # an action counts as inferior only when it loses by more than tol
        comp = np.where(lam > tol, beta[iid], 0.0)
        empty = np.zeros(0)
        out[iid] = InfosetReport(iid, info.player, float(vals.max()), lam, float(vals.max()), empty,
                                 comp, empty, beliefs[iid])
    worst_id, worst = None, 0.0
    for iid, rep in out.items():
        if rep.worst() > worst:
            worst_id, worst = iid, rep.worst()
    refinement = "semiseq" if mode == "nash" else "sgpe-semiseq"
    return VerifyReport(refinement, tol, worst <= tol, worst, worst_id, out)


@dataclass(frozen=True)
class Deviation:
    player: int
    gain: float
    strategy: dict[str, str]


@dataclass(frozen=True)
class BruteForceResult:
    ok: bool
    worst: Deviation | None

    def __bool__(self) -> bool:
        return self.ok


class BruteForceCapError(ValueError):
    """A player has more pure behavioral strategies than the configured cap."""


def brute_force_nash_check(game: Game, profile: BehaviorProfile, tol: float = 1e-6,
                           cap: int = BRUTE_FORCE_CAP) -> BruteForceResult:
    """Compare each player's payoff with every pure deviation.

    Expected payoff is multilinear in a player's per-infoset vectors, so the
    best deviation is attained at a pure behavioral strategy.
    """
    profile = _bind(game, profile, BehaviorProfile)
    worst = None
    for player in game.players():
        own = game.infosets_of(player)
        count = 1
        for iid in own:
            count *= len(game.infosets[iid].actions)
        if count > cap:
            raise BruteForceCapError(f"player {player} has {count} pure strategies (cap {cap})")
        base = expected_payoff(game, profile, player)
        for choice in itertools.product(*(game.infosets[i].actions for i in own)):
            strategy = dict(zip(own, choice))
            dev = profile.copy()
            for iid, act in strategy.items():
                vec = np.zeros(len(game.infosets[iid].actions))
                vec[game.infosets[iid].actions.index(act)] = 1.0
                dev.flat[game.action_slice(iid)] = vec
            gain = expected_payoff(game, dev, player) - base
            if worst is None or gain > worst.gain:
                worst = Deviation(player, gain, strategy)
    ok = worst is None or worst.gain <= tol
    return BruteForceResult(ok, worst)


def verify_profile(game: Game, beta: BehaviorProfile, refinement: str = "nash",
                   tol: float | None = None, beta_tilde: BehaviorProfile | None = None,
                   mu: BeliefSystem | None = None, reach_tol: float = 0.0) -> VerifyReport:
    """Run the checker for ``refinement``, building whatever companion is missing."""
    sub = subgame_decomposition(game)
    if refinement in ("semiseq", "sgpe-semiseq"):
        mode = "nash" if refinement == "semiseq" else "sgpe"
        if mu is None:
            mu = solve_beliefs(game, beta, mode, subindex=sub)
        return check_semi_sequential(game, beta, mu, tol, mode, sub)
    if refinement not in ("nash", "sgpe"):
        raise ValueError(f"unknown refinement {refinement!r}")
    if beta_tilde is None or mu is None:
        bt, m = construct_companion(game, beta, refinement, reach_tol=reach_tol, subindex=sub)
        beta_tilde = bt if beta_tilde is None else beta_tilde
        mu = m if mu is None else mu
    a = Assessment(_bind(game, beta, BehaviorProfile), _bind(game, beta_tilde, BehaviorProfile),
                   _bind(game, mu, BeliefSystem))
    if refinement == "nash":
        return check_nash(game, a, tol)
    return check_sgpe(game, sub, a, tol)
