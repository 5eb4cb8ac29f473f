"""Extensive-form game trees: data model, JSON format, perfect recall and subgames."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

DECISION = "decision"
CHANCE = "chance"
TERMINAL = "terminal"
KINDS = (DECISION, CHANCE, TERMINAL)

PROB_SUM_TOL = 1e-12


class GameError(ValueError):
    """Base class for problems with a game document."""


class GameSyntaxError(GameError):
    """The document is not well-formed JSON or misses required fields."""


class GameSemanticError(GameError):
    """The document is well-formed but describes an invalid game."""


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    actions: tuple[str, ...] = ()
    children: tuple[str, ...] = ()
    owner: int | None = None
    infoset: str | None = None
    chance_probs: tuple[float, ...] | None = None
    payoffs: tuple[float, ...] | None = None

    @property
    def is_terminal(self) -> bool:
        return self.kind == TERMINAL

    def child(self, label: str) -> str:
        return self.children[self.actions.index(label)]


@dataclass(frozen=True)
class Infoset:
    id: str
    player: int
    members: tuple[str, ...]
    actions: tuple[str, ...]


@dataclass(frozen=True)
class SubgameIndex:
    subgame_roots: frozenset[str]
    node_to_root: Mapping[str, str]
    # depth of the subgame root along each node's history (the split index g(h))
    cut: Mapping[str, int]
    # root of the smallest subgame containing each infoset
    infoset_root: Mapping[str, str]


def _parse_prob(value: Any, where: str) -> float:
    if isinstance(value, bool):
        raise GameSyntaxError(f"{where}: probability must be a number or string")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise GameSyntaxError(f"{where}: bad probability {value!r}") from exc
    raise GameSyntaxError(f"{where}: probability must be a number or string")


class Game:
    """An immutable, validated game tree.

    Players are numbered 1..n.  Infosets are kept sorted by id; this order,
    with actions and members in their listed order, fixes the coordinate
    layout of every flat profile vector.
    """

    def __init__(self, num_players: int, root: str, nodes: Mapping[str, Node],
                 infosets: Mapping[str, Infoset], check_recall: bool = True):
        self.num_players = int(num_players)
        self.root = root
        self.nodes: dict[str, Node] = dict(nodes)
        self.infosets: dict[str, Infoset] = {k: infosets[k] for k in sorted(infosets)}
        self._check_structure()
        self._index_tree()
        self._layout()
        # memo for derived structure (successor sets, compiled arrays); never holds profile data
        self._cache: dict = {}
        if check_recall:
            violations = validate_perfect_recall(self)
            if violations:
                v = violations[0]
                raise GameSemanticError(
                    f"perfect recall fails at infoset {v.infoset!r}: "
                    f"{v.first!r} and {v.second!r} have different experience"
                )

    @property
    def payoff_dim(self) -> int:
        return self.num_players

    # construction helpers

    def _check_structure(self) -> None:
        n = self.num_players
        if n < 1:
            raise GameSemanticError("num_players must be positive")
        if self.root not in self.nodes:
            raise GameSemanticError(f"root {self.root!r} is not a node")
        for node in self.nodes.values():
            if node.kind not in KINDS:
                raise GameSemanticError(f"node {node.id!r}: unknown kind {node.kind!r}")
            if node.kind == TERMINAL:
                if node.actions:
                    raise GameSemanticError(f"terminal node {node.id!r} has actions")
                if node.payoffs is None or len(node.payoffs) != n:
                    raise GameSemanticError(
                        f"terminal node {node.id!r}: payoff vector must have length {n}")
                continue
            if node.payoffs is not None:
                raise GameSemanticError(f"non-terminal node {node.id!r} carries payoffs")
            if not node.actions:
                raise GameSemanticError(f"node {node.id!r} has no actions")
            if len(set(node.actions)) != len(node.actions):
                raise GameSemanticError(f"node {node.id!r}: duplicate action labels")
            for child in node.children:
                if child not in self.nodes:
                    raise GameSemanticError(f"node {node.id!r}: dangling child {child!r}")
            if node.kind == CHANCE:
                probs = node.chance_probs
                if probs is None or len(probs) != len(node.actions):
                    raise GameSemanticError(f"chance node {node.id!r}: missing probabilities")
                if min(probs) <= 0 or abs(sum(probs) - 1.0) > PROB_SUM_TOL:
                    raise GameSemanticError(
                        f"chance node {node.id!r}: probabilities must be positive and sum to 1")
            else:
                if node.owner is None or not 1 <= node.owner <= n:
                    raise GameSemanticError(f"decision node {node.id!r}: bad owner {node.owner!r}")
                if node.infoset not in self.infosets:
                    raise GameSemanticError(
                        f"decision node {node.id!r}: unknown infoset {node.infoset!r}")

        seen: set[str] = set()
        for info in self.infosets.values():
            if not info.members:
                raise GameSemanticError(f"infoset {info.id!r} has no members")
            for m in info.members:
                if m not in self.nodes:
                    raise GameSemanticError(f"infoset {info.id!r}: unknown member {m!r}")
                node = self.nodes[m]
                if node.kind != DECISION or node.infoset != info.id:
                    raise GameSemanticError(
                        f"infoset {info.id!r}: member {m!r} does not point back to it")
                if node.owner != info.player:
                    raise GameSemanticError(f"infoset {info.id!r}: member {m!r} has another owner")
                if tuple(node.actions) != tuple(info.actions):
                    raise GameSemanticError(
                        f"infoset {info.id!r}: actions of member {m!r} do not match")
                if m in seen:
                    raise GameSemanticError(f"node {m!r} belongs to two infosets")
                seen.add(m)
        for node in self.nodes.values():
            if node.kind == DECISION and node.id not in seen:
                raise GameSemanticError(f"decision node {node.id!r} is not listed in its infoset")

    def _index_tree(self) -> None:
        parent: dict[str, tuple[str, int] | None] = {self.root: None}
        order = [self.root]
        queue = deque([self.root])
        while queue:
            nid = queue.popleft()
            for k, child in enumerate(self.nodes[nid].children):
                if child in parent:
                    raise GameSemanticError(f"node {child!r} has several parents or lies on a cycle")
                parent[child] = (nid, k)
                order.append(child)
                queue.append(child)
        if len(order) != len(self.nodes):
            missing = sorted(set(self.nodes) - set(order))
            raise GameSemanticError(f"nodes not reachable from the root: {missing[:5]}")
        self.parent = parent
        self.order: tuple[str, ...] = tuple(order)
        path: dict[str, tuple[tuple[str, int], ...]] = {self.root: ()}
        for nid in order[1:]:
            p, k = parent[nid]
            path[nid] = path[p] + ((p, k),)
        # (ancestor node, action index taken there) from the root down
        self.path = path
        self.terminals: tuple[str, ...] = tuple(n for n in order if self.nodes[n].is_terminal)

    def _layout(self) -> None:
        self.action_offset: dict[str, int] = {}
        self.member_offset: dict[str, int] = {}
        a = m = 0
        for iid, info in self.infosets.items():
            self.action_offset[iid] = a
            self.member_offset[iid] = m
            a += len(info.actions)
            m += len(info.members)
        self.num_action_slots = a
        self.num_member_slots = m

    # queries

    def history(self, node: str) -> tuple[str, ...]:
        return tuple(self.nodes[p].actions[k] for p, k in self.path[node])

    def depth(self, node: str) -> int:
        return len(self.path[node])

    def players(self) -> range:
        return range(1, self.num_players + 1)

    def infosets_of(self, player: int) -> list[str]:
        return [i for i, info in self.infosets.items() if info.player == player]

    def action_slice(self, infoset: str) -> slice:
        off = self.action_offset[infoset]
        return slice(off, off + len(self.infosets[infoset].actions))

    def member_slice(self, infoset: str) -> slice:
        off = self.member_offset[infoset]
        return slice(off, off + len(self.infosets[infoset].members))

    def max_abs_payoff(self) -> float:
        return max((abs(x) for t in self.terminals for x in self.nodes[t].payoffs), default=0.0)

    def is_prefix(self, ancestor: str, node: str) -> bool:
        return ancestor == node or any(p == ancestor for p, _ in self.path[node])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return (self.num_players == other.num_players and self.root == other.root
                and self.nodes == other.nodes and self.infosets == other.infosets)

    def __repr__(self) -> str:
        return (f"Game(n={self.num_players}, nodes={len(self.nodes)}, "
                f"infosets={len(self.infosets)}, terminals={len(self.terminals)})")


# JSON format

def _require(obj: Mapping, key: str, where: str) -> Any:
    if not isinstance(obj, Mapping) or key not in obj:
        raise GameSyntaxError(f"{where}: missing field {key!r}")
    return obj[key]


def game_from_dict(doc: Mapping, check_recall: bool = True) -> Game:
    if not isinstance(doc, Mapping):
        raise GameSyntaxError("game document must be a JSON object")
    n = _require(doc, "num_players", "game")
    if not isinstance(n, int) or isinstance(n, bool):
        raise GameSyntaxError("num_players must be an integer")
    root = _require(doc, "root", "game")
    raw_nodes = _require(doc, "nodes", "game")
    raw_infosets = doc.get("infosets", {})
    if not isinstance(raw_nodes, Mapping) or not isinstance(raw_infosets, Mapping):
        raise GameSyntaxError("nodes and infosets must be JSON objects")

    nodes: dict[str, Node] = {}
    for nid, raw in raw_nodes.items():
        where = f"node {nid!r}"
        kind = _require(raw, "kind", where)
        if kind == TERMINAL:
            payoffs = _require(raw, "payoffs", where)
            if not isinstance(payoffs, list):
                raise GameSyntaxError(f"{where}: payoffs must be a list")
            try:
                pay = tuple(float(x) for x in payoffs)
            except (TypeError, ValueError) as exc:
                raise GameSyntaxError(f"{where}: payoffs must be numbers") from exc
            nodes[nid] = Node(nid, TERMINAL, payoffs=pay)
            continue
        acts = _require(raw, "actions", where)
        if not isinstance(acts, list):
            raise GameSyntaxError(f"{where}: actions must be a list")
        labels = tuple(str(_require(a, "label", where)) for a in acts)
        children = tuple(str(_require(a, "child", where)) for a in acts)
        probs = None
        owner = infoset = None
        if kind == CHANCE:
            probs = tuple(_parse_prob(_require(a, "prob", where), where) for a in acts)
        elif kind == DECISION:
            owner = _require(raw, "owner", where)
            infoset = _require(raw, "infoset", where)
        else:
            raise GameSemanticError(f"{where}: unknown kind {kind!r}")
        nodes[nid] = Node(nid, kind, labels, children, owner, infoset, probs,
                          payoffs=None if raw.get("payoffs") is None else tuple(raw["payoffs"]))

    infosets: dict[str, Infoset] = {}
    for iid, raw in raw_infosets.items():
        where = f"infoset {iid!r}"
        infosets[iid] = Infoset(iid, _require(raw, "player", where),
                                tuple(_require(raw, "members", where)),
                                tuple(str(a) for a in _require(raw, "actions", where)))
    return Game(n, str(root), nodes, infosets, check_recall=check_recall)


def parse_game(document: str | bytes, check_recall: bool = True) -> Game:
    """Parse a JSON game document; raises GameSyntaxError or GameSemanticError."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GameSyntaxError(f"invalid JSON: {exc}") from exc
    return game_from_dict(doc, check_recall=check_recall)


def load_game(path, check_recall: bool = True) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read(), check_recall=check_recall)


def game_to_dict(game: Game) -> dict:
    nodes = {}
    for nid in game.order:
        node = game.nodes[nid]
        if node.is_terminal:
            nodes[nid] = {"kind": TERMINAL, "payoffs": list(node.payoffs)}
            continue
        acts = []
        for k, (label, child) in enumerate(zip(node.actions, node.children)):
            entry = {"label": label, "child": child}
            if node.kind == CHANCE:
                entry["prob"] = node.chance_probs[k]
            acts.append(entry)
        entry = {"kind": node.kind}
        if node.kind == DECISION:
            entry["owner"] = node.owner
            entry["infoset"] = node.infoset
        entry["actions"] = acts
        nodes[nid] = entry
    infosets = {
        iid: {"player": info.player, "members": list(info.members), "actions": list(info.actions)}
        for iid, info in game.infosets.items()
    }
    return {"num_players": game.num_players, "root": game.root, "nodes": nodes, "infosets": infosets}


def serialize(game: Game, indent: int | None = 1) -> str:
    """Emit the JSON game format; ``parse_game(serialize(g)) == g``."""
    return json.dumps(game_to_dict(game), indent=indent)


# perfect recall

@dataclass(frozen=True)
class RecallViolation:
    infoset: str
    first: str
    second: str


def experience_sequence(game: Game, player: int, node: str) -> tuple[tuple[str, str | None], ...]:
    """The player's (infoset, action) record along the path to ``node``.

    When ``node`` is the player's own decision node, its infoset is appended
    as a final ``(infoset, None)`` entry.
    """
    seq = []
    for anc, k in game.path[node]:
        a = game.nodes[anc]
        if a.kind == DECISION and a.owner == player:
            seq.append((a.infoset, a.actions[k]))
    here = game.nodes[node]
    if here.kind == DECISION and here.owner == player:
        seq.append((here.infoset, None))
    return tuple(seq)


def validate_perfect_recall(game: Game) -> list[RecallViolation]:
    report = []
    for iid, info in game.infosets.items():
        ref = experience_sequence(game, info.player, info.members[0])
        for m in info.members[1:]:
            if experience_sequence(game, info.player, m) != ref:
                report.append(RecallViolation(iid, info.members[0], m))
    return report


# subgames

def subgame_decomposition(game: Game) -> SubgameIndex:
    tin: dict[str, int] = {}
    tout: dict[str, int] = {}
    clock = 0
    stack = [(game.root, False)]
    while stack:
        nid, done = stack.pop()
        if done:
            tout[nid] = clock
            continue
        tin[nid] = clock
        clock += 1
        stack.append((nid, True))
        for child in reversed(game.nodes[nid].children):
            stack.append((child, False))

    spans = {iid: [tin[m] for m in info.members] for iid, info in game.infosets.items()}

    def closed(nid: str) -> bool:
        lo, hi = tin[nid], tout[nid]
        for times in spans.values():
            inside = [lo <= x < hi for x in times]
            if any(inside) and not all(inside):
                return False
        return True

    roots = set()
    for nid in game.order:
        node = game.nodes[nid]
        if node.is_terminal:
            continue
        candidate = (nid == game.root or node.kind == CHANCE
                     or len(game.infosets[node.infoset].members) == 1)
        if candidate and closed(nid):
            roots.add(nid)

    node_to_root: dict[str, str] = {}
    cut: dict[str, int] = {}
    for nid in game.order:
        if nid in roots:
            node_to_root[nid] = nid
            cut[nid] = game.depth(nid)
        else:
            p, _ = game.parent[nid]
            node_to_root[nid] = node_to_root[p]
            cut[nid] = cut[p]

    # closure makes every member share one nearest subgame root
    infoset_root = {iid: node_to_root[info.members[0]] for iid, info in game.infosets.items()}
    return SubgameIndex(frozenset(roots), node_to_root, cut, infoset_root)
