"""Behavioral strategy profiles, belief systems and assessments."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .game import Game

SIMPLEX_TOL = 1e-10


class DimensionError(ValueError):
    """A vector does not fit the game's layout."""


def _to_float(x) -> float:
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    return float(x)


class _Layered(Mapping):
    """Flat vector with per-infoset views; subclasses pick the slicing."""

    _kind = ""

    def __init__(self, game: Game, data=None):
        self.game = game
        size = self._size(game)
        if data is None:
            data = self._uniform(game)
        data = np.array(data, dtype=float)
        if data.shape != (size,):
            raise DimensionError(f"{self._kind} needs {size} entries, got shape {data.shape}")
        self.flat = data

    @staticmethod
    def _size(game: Game) -> int:
        raise NotImplementedError

    def _slice(self, infoset: str) -> slice:
        raise NotImplementedError

    def _width(self, infoset: str) -> int:
        s = self._slice(infoset)
        return s.stop - s.start

    def _uniform(self, game: Game) -> np.ndarray:
        out = np.empty(self._size(game))
        for iid in game.infosets:
            s = self._slice_for(game, iid)
            out[s] = 1.0 / (s.stop - s.start)
        return out

    def __getitem__(self, infoset: str) -> np.ndarray:
        return self.flat[self._slice(infoset)]

    def __iter__(self) -> Iterator[str]:
        return iter(self.game.infosets)

    def __len__(self) -> int:
        return len(self.game.infosets)

    def copy(self):
        return type(self)(self.game, self.flat.copy())

    def replace(self, infoset: str, vector) -> "_Layered":
        out = self.copy()
        vec = np.asarray(vector, dtype=float)
        if vec.shape != (self._width(infoset),):
            raise DimensionError(f"infoset {infoset!r} needs {self._width(infoset)} entries")
        out.flat[self._slice(infoset)] = vec
        return out

    def simplex_defect(self) -> float:
        worst = 0.0
        for iid in self.game.infosets:
            v = self[iid]
            worst = max(worst, abs(v.sum() - 1.0), float(max(0.0, -v.min())))
        return worst

    def is_valid(self, tol: float = SIMPLEX_TOL) -> bool:
        return self.simplex_defect() <= tol

    def to_dict(self) -> dict[str, list[float]]:
        return {iid: [float(x) for x in self[iid]] for iid in self.game.infosets}

    @classmethod
    def from_mapping(cls, game: Game, mapping: Mapping):
        """Build from ``{infoset id: vector}``; missing infosets are uniform."""
        out = cls(game)
        for iid, vec in mapping.items():
            if iid not in game.infosets:
                raise DimensionError(f"unknown infoset {iid!r}")
            try:
                values = [_to_float(x) for x in vec]
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise DimensionError(f"infoset {iid!r}: entries must be numbers") from exc
            out = out.replace(iid, values)
        return out

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and other.game is self.game
                and np.array_equal(other.flat, self.flat))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {np.round(v, 6).tolist()}" for k, v in self.items())
        return f"{type(self).__name__}({body})"


class BehaviorProfile(_Layered):
    """One probability vector per infoset, over that infoset's actions."""

    _kind = "behavior profile"

    @staticmethod
    def _size(game: Game) -> int:
        return game.num_action_slots

    @staticmethod
    def _slice_for(game: Game, infoset: str) -> slice:
        return game.action_slice(infoset)

    def _slice(self, infoset: str) -> slice:
        return self.game.action_slice(infoset)

    def prob(self, infoset: str, action: str) -> float:
        return float(self[infoset][self.game.infosets[infoset].actions.index(action)])

    @classmethod
    def pure(cls, game: Game, choices: Mapping[str, str]) -> "BehaviorProfile":
        """Vertex profile; infosets missing from ``choices`` stay uniform."""
        out = cls(game)
        for iid, label in choices.items():
            vec = np.zeros(len(game.infosets[iid].actions))
            vec[game.infosets[iid].actions.index(label)] = 1.0
            out.flat[game.action_slice(iid)] = vec
        return out


class BeliefSystem(_Layered):
    """One probability vector per infoset, over its member nodes in listed order."""

    _kind = "belief system"

    @staticmethod
    def _size(game: Game) -> int:
        return game.num_member_slots

    @staticmethod
    def _slice_for(game: Game, infoset: str) -> slice:
        return game.member_slice(infoset)

    def _slice(self, infoset: str) -> slice:
        return self.game.member_slice(infoset)

    def at(self, infoset: str, node: str) -> float:
        return float(self[infoset][self.game.infosets[infoset].members.index(node)])


@dataclass(frozen=True)
class Assessment:
    beta: BehaviorProfile
    beta_tilde: BehaviorProfile
    mu: BeliefSystem

    def __post_init__(self):
        g = self.beta.game
        if self.beta_tilde.game is not g or self.mu.game is not g:
            raise DimensionError("assessment parts belong to different games")
