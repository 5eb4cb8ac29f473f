"""Small hand-built games used in tests, docs and the CLI demo.

Terminal payoffs not pinned down by any published payoff expression are 0.
"""

from __future__ import annotations

from fractions import Fraction

from .game import Game, game_from_dict


class _Builder:
    def __init__(self, num_players: int):
        self.n = num_players
        self.nodes: dict[str, dict] = {}
        self.infosets: dict[str, dict] = {}

    def decision(self, nid: str, owner: int, infoset: str, actions: list[tuple[str, str]]):
        self.nodes[nid] = {"kind": "decision", "owner": owner, "infoset": infoset,
                           "actions": [{"label": a, "child": c} for a, c in actions]}
        info = self.infosets.setdefault(
            infoset, {"player": owner, "members": [], "actions": [a for a, _ in actions]})
        info["members"].append(nid)

    def chance(self, nid: str, actions: list[tuple[str, str, str]]):
        self.nodes[nid] = {"kind": "chance",
                           "actions": [{"label": a, "child": c, "prob": p} for a, c, p in actions]}

    def terminal(self, nid: str, *payoffs: float):
        pay = list(payoffs) + [0] * (self.n - len(payoffs))
        self.nodes[nid] = {"kind": "terminal", "payoffs": pay}

    def game(self, root: str = "r") -> Game:
        return game_from_dict({"num_players": self.n, "root": root, "nodes": self.nodes,
                               "infosets": self.infosets})


def notation_game() -> Game:
    """Three players after a chance move with probabilities 1/7, 2/7, 4/7.

    Infosets: p1.1 = {a, b, c}; p2.1 = {b.y, c.y}; p2.2 = {b.y.e.F, c.y.e.H};
    p2.3 = {b.y.d}; p3.1 = {b.y.e}; p3.2 = {c.y.e}.
    """
    b = _Builder(3)
    b.chance("r", [("a", "a", "1/7"), ("b", "b", "2/7"), ("c", "c", "4/7")])
    for x in "abc":
        b.decision(x, 1, "p1.1", [("n", f"{x}.n"), ("y", f"{x}.y")])
        b.terminal(f"{x}.n", 1, 0, 0)
    b.terminal("a.y", 2, 1, 1)
    for x in "bc":
        b.decision(f"{x}.y", 2, "p2.1", [("e", f"{x}.y.e"), ("d", f"{x}.y.d")])
    b.decision("b.y.e", 3, "p3.1", [("F", "b.y.e.F"), ("G", "b.y.e.G")])
    b.decision("c.y.e", 3, "p3.2", [("H", "c.y.e.H"), ("K", "c.y.e.K")])
    b.terminal("b.y.e.G", 0, 2, 3)
    b.terminal("c.y.e.K", 1, 1, 2)
    for x, m in (("b", "F"), ("c", "H")):
        node = f"{x}.y.e.{m}"
        b.decision(node, 2, "p2.2", [("L", f"{node}.L"), ("R", f"{node}.R")])
        b.terminal(f"{node}.L", 3, 2, 1)
        b.terminal(f"{node}.R", 0, 4, 2)
    b.decision("b.y.d", 2, "p2.3", [("U", "b.y.d.U"), ("D", "b.y.d.D")])
    b.terminal("b.y.d.U", 2, 3, 0)
    b.terminal("b.y.d.D", 1, 0, 4)
    b.terminal("c.y.d", 0, 1, 1)
    return b.game()


def example1_game() -> Game:
    """Player 1 picks A/B; after A, player 2 picks L/R; after A,R player 1 picks a/b.

    Player 3 cannot tell A,R,b from B (infoset p3.1, members in that order).
    """
    b = _Builder(3)
    b.decision("r", 1, "p1.1", [("A", "A"), ("B", "B")])
    b.decision("A", 2, "p2.1", [("L", "AL"), ("R", "AR")])
    b.terminal("AL", 1, 3, 0)
    b.decision("AR", 1, "p1.2", [("a", "ARa"), ("b", "ARb")])
    b.terminal("ARa", 2, 0, 0)
    b.decision("ARb", 3, "p3.1", [("N", "ARbN"), ("Y", "ARbY")])
    b.terminal("ARbN", 0, 0, 5)
    b.terminal("ARbY", 4, 4, 0)
    b.decision("B", 3, "p3.1", [("N", "BN"), ("Y", "BY")])
    b.terminal("BN", 0, 0, 0)
    b.terminal("BY", 3, 0, 3)
    return b.game()


def example3_game() -> Game:
    """Player 1 picks N/Y; after Y player 2 picks I/O; after I player 3 picks A/B,
    then player 1 picks C/D without seeing A/B (infoset p1.2)."""
    b = _Builder(3)
    b.decision("r", 1, "p1.1", [("N", "N"), ("Y", "Y")])
    b.terminal("N", 5, 0, 0)
    b.decision("Y", 2, "p2.1", [("I", "YI"), ("O", "YO")])
    b.terminal("YO", 7, 5, 0)
    b.decision("YI", 3, "p3.1", [("A", "YIA"), ("B", "YIB")])
    b.decision("YIA", 1, "p1.2", [("C", "YIAC"), ("D", "YIAD")])
    b.decision("YIB", 1, "p1.2", [("C", "YIBC"), ("D", "YIBD")])
    b.terminal("YIAC", 0, 0, 0)
    b.terminal("YIAD", 6, 9, 6)
    b.terminal("YIBC", 6, 9, 6)
    b.terminal("YIBD", 0, 0, 0)
    return b.game()


F = Fraction

# Example 1 equilibrium sets; profiles list (A, B), (a, b), (L, R), (N, Y).
EXAMPLE1_TYPE3 = {"p1.1": (F(24, 49), F(25, 49)), "p1.2": (0, 1),
                  "p2.1": (F(3, 8), F(5, 8)), "p3.1": (F(1, 4), F(3, 4))}


def example1_family(kind: int, s, a_prob=F(1, 2)) -> dict:
    """Representative of an Example 1 equilibrium family.

    kind 1: B chosen, Y chosen, player 2 plays R with probability ``s`` <= 2/3.
    kind 2: A and L chosen, player 3 plays Y with probability ``s`` <= 1/3.
    ``a_prob`` is player 1's free choice at the unreached second infoset.
    """
    s = F(s)
    if kind == 1:
        return {"p1.1": (0, 1), "p1.2": (a_prob, 1 - a_prob), "p2.1": (1 - s, s), "p3.1": (0, 1)}
    if kind == 2:
        return {"p1.1": (1, 0), "p1.2": (a_prob, 1 - a_prob), "p2.1": (1, 0), "p3.1": (1 - s, s)}
    raise ValueError(kind)


def example1_distance(beta) -> float:
    """L-infinity distance from a profile to the union of the equilibrium sets."""
    A = float(beta["p1.1"][0])
    R = float(beta["p2.1"][1])
    Y = float(beta["p3.1"][1])
    b_ = float(beta["p1.2"][1])
    type1 = max(A, 1 - Y, max(0.0, R - 2 / 3))
    type2 = max(1 - A, R, max(0.0, Y - 1 / 3))
    type3 = max(abs(A - 24 / 49), abs(1 - b_), abs(R - 5 / 8), abs(Y - 3 / 4))
    return min(type1, type2, type3)


# Subgame-perfect points of the Example 3 game: (p1.1, p1.2, p2.1, p3.1)
EXAMPLE3_SGPE = [
    {"p1.1": (0, 1), "p1.2": (1, 0), "p2.1": (1, 0), "p3.1": (0, 1)},
    {"p1.1": (0, 1), "p1.2": (0, 1), "p2.1": (1, 0), "p3.1": (1, 0)},
    {"p1.1": (0, 1), "p1.2": (F(1, 2), F(1, 2)), "p2.1": (0, 1), "p3.1": (F(1, 2), F(1, 2))},
]


def example3_distance(beta) -> float:
    def gap(point):
        return max(abs(float(beta[k][0]) - float(v[0])) for k, v in point.items())
    return min(gap(p) for p in EXAMPLE3_SGPE)
