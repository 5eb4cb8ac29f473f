"""Flat array form of a game, consumed by the batched kernels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import CHANCE, Game, SubgameIndex, subgame_decomposition

ROOT_EDGE = -2
CHANCE_ACTOR = -1
TERMINAL_ACTOR = -2


@dataclass(frozen=True, eq=False)
class CompiledGame:
    num_players: int
    num_nodes: int
    parent: np.ndarray        # node -> parent node (-1 at the root)
    edge_player: np.ndarray   # node -> 0-based player moving into it, -1 chance, -2 root
    edge_slot: np.ndarray     # node -> profile slot of the incoming action, -1 if none
    edge_prob: np.ndarray     # node -> chance probability of the incoming action (1 otherwise)
    actor: np.ndarray         # node -> 0-based mover, -1 chance, -2 terminal
    child_start: np.ndarray
    child_count: np.ndarray
    payoff: np.ndarray        # (nodes, players)
    subroot: np.ndarray       # uint8 flag
    level_ptr: np.ndarray     # nodes of depth d are level_ptr[d]:level_ptr[d+1]
    pair_slot: np.ndarray     # one entry per (infoset, action, member)
    pair_node: np.ndarray
    pair_child: np.ndarray
    pair_owner: np.ndarray
    pair_mslot: np.ndarray
    mem_node: np.ndarray      # one entry per belief coordinate
    mem_owner: np.ndarray
    act_ptr: np.ndarray       # infoset k owns slots act_ptr[k]:act_ptr[k+1]
    mem_ptr: np.ndarray
    inf_owner: np.ndarray

    @property
    def num_action_slots(self) -> int:
        return int(self.act_ptr[-1])

    @property
    def num_member_slots(self) -> int:
        return int(self.mem_ptr[-1])


def compile_game(game: Game, subindex: SubgameIndex | None = None) -> CompiledGame:
    if "compiled" in game._cache:
        return game._cache["compiled"]
    sub = subindex or subgame_decomposition(game)
    order = game.order
    index = {nid: i for i, nid in enumerate(order)}
    N, n = len(order), game.num_players
    i64 = np.int64
    parent = np.full(N, -1, i64)
    edge_player = np.full(N, ROOT_EDGE, i64)
    edge_slot = np.full(N, -1, i64)
    edge_prob = np.ones(N)
    actor = np.full(N, TERMINAL_ACTOR, i64)
    child_start = np.zeros(N, i64)
    child_count = np.zeros(N, i64)
    payoff = np.zeros((N, n))
    subroot = np.zeros(N, np.uint8)
    depth = np.zeros(N, i64)

    for i, nid in enumerate(order):
        node = game.nodes[nid]
        depth[i] = game.depth(nid)
        subroot[i] = nid in sub.subgame_roots
        if node.is_terminal:
            payoff[i] = node.payoffs
            continue
        kids = [index[c] for c in node.children]
        # breadth-first numbering keeps siblings contiguous
        assert kids == list(range(kids[0], kids[0] + len(kids)))
        child_start[i] = kids[0]
        child_count[i] = len(kids)
        if node.kind == CHANCE:
            actor[i] = CHANCE_ACTOR
        else:
            actor[i] = node.owner - 1
        for k, c in enumerate(kids):
            parent[c] = i
            if node.kind == CHANCE:
                edge_player[c] = CHANCE_ACTOR
                edge_prob[c] = node.chance_probs[k]
            else:
                edge_player[c] = node.owner - 1
                edge_slot[c] = game.action_offset[node.infoset] + k

    level_ptr = np.searchsorted(depth, np.arange(depth.max() + 2))

    pair_slot, pair_node, pair_child, pair_owner, pair_mslot = [], [], [], [], []
    mem_node, mem_owner = [], []
    act_ptr, mem_ptr, inf_owner = [0], [0], []
    for iid, info in game.infosets.items():
        a0, m0 = game.action_offset[iid], game.member_offset[iid]
        for k in range(len(info.actions)):
            for j, h in enumerate(info.members):
                pair_slot.append(a0 + k)
                pair_node.append(index[h])
                pair_child.append(index[game.nodes[h].children[k]])
                pair_owner.append(info.player - 1)
                pair_mslot.append(m0 + j)
        for h in info.members:
            mem_node.append(index[h])
            mem_owner.append(info.player - 1)
        act_ptr.append(a0 + len(info.actions))
        mem_ptr.append(m0 + len(info.members))
        inf_owner.append(info.player - 1)

    arr = lambda xs: np.asarray(xs, dtype=i64)
    cg = CompiledGame(
        n, N, parent, edge_player, edge_slot, edge_prob, actor, child_start, child_count,
        payoff, subroot, level_ptr.astype(i64), arr(pair_slot), arr(pair_node), arr(pair_child),
        arr(pair_owner), arr(pair_mslot), arr(mem_node), arr(mem_owner), arr(act_ptr),
        arr(mem_ptr), arr(inf_owner),
    )
    game._cache["compiled"] = cg
    return cg
