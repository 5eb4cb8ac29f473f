"""Equilibrium computation for finite extensive-form games by homotopy path following.

Typical use::

    from efgpath import load_game, solve, verify_profile
    game = load_game("game.json")
    result = solve(game, method="logm")
    print(verify_profile(game, result.beta).summary())
"""

from .belief import belief_residual, solve_beliefs
from .game import (Game, GameError, GameSemanticError, GameSyntaxError, Infoset, Node,
                   SubgameIndex, experience_sequence, game_from_dict, game_to_dict, load_game,
                   parse_game, serialize, subgame_decomposition, validate_perfect_recall)
from .generate import GenerationError, GenSpec, generate, infoset_counts
from .homotopy import (CsvTraceSink, HomotopyState, PathSystem, SolverConfig, TraceFailure,
                       TraceResult, residual_cqpm, residual_logm, solve, start_point, trace_path)
from .kernels import BACKEND
from .payoff import conditional_payoff, expected_payoff, subgame_conditional_payoff
from .profiles import Assessment, BehaviorProfile, BeliefSystem, DimensionError
from .verify import (BruteForceResult, VerifyReport, brute_force_nash_check, check_nash,
                     check_semi_sequential, check_sgpe, construct_companion, verify_profile)

__version__ = "0.1.0"
