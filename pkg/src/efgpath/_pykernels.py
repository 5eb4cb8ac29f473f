"""numpy version of the tree sweeps, vectorized over batch and tree level."""

from __future__ import annotations

import weakref

import numpy as np

_plans: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _plan(cg):
    plan = _plans.get(cg)
    if plan is not None:
        return plan
    levels = []
    lp = cg.level_ptr
    for d in range(len(lp) - 1):
        lo, hi = int(lp[d]), int(lp[d + 1])
        idx = np.arange(lo, hi)
        ep = cg.edge_player[idx]
        inner = idx[cg.actor[idx] != -2]
        levels.append({
            "lo": lo, "hi": hi,
            "parent": cg.parent[idx],
            "player": ep,
            "slot": np.where(ep >= 0, cg.edge_slot[idx], 0),
            "chance": ep < 0,
            "prob": cg.edge_prob[idx],
            "reset": cg.subroot[idx].astype(bool),
            "inner": inner,
            "starts": cg.child_start[inner] - hi,
        })
    if len(cg.pair_slot):
        slot_starts = np.flatnonzero(np.r_[True, np.diff(cg.pair_slot) != 0])
    else:
        slot_starts = np.zeros(0, dtype=np.int64)
    plan = (levels, slot_starts, cg.pair_slot[slot_starts])
    _plans[cg] = plan
    return plan


def infoset_values(cg, P, Q, MU, sgpe):
    levels, slot_starts, slots = _plan(cg)
    B, N, n = P.shape[0], cg.num_nodes, cg.num_players
    players = np.arange(n)
    R = np.empty((B, N))
    S = np.empty((B, N, n))
    R[:, 0] = 1.0
    S[:, 0, :] = 1.0
    for lv in levels[1:]:
        lo, hi, par = lv["lo"], lv["hi"], lv["parent"]
        f = np.where(lv["chance"], lv["prob"], P[:, lv["slot"]])
        own = lv["player"][:, None] == players
        r = R[:, par] * f
        s = S[:, par, :] * np.where(own, 1.0, f[:, :, None])
        if sgpe:
            reset = lv["reset"]
            r[:, reset] = 1.0
            s[:, reset, :] = 1.0
        R[:, lo:hi] = r
        S[:, lo:hi, :] = s

    V = np.broadcast_to(cg.payoff, (B, N, n)).copy()
    for d in range(len(levels) - 2, -1, -1):
        lv, below = levels[d], levels[d + 1]
        if len(lv["inner"]) == 0:
            continue
        lo, hi = below["lo"], below["hi"]
        own = below["player"][:, None] == players
        edge = np.where(own, Q[:, below["slot"]][:, :, None], P[:, below["slot"]][:, :, None])
        g = np.where(below["chance"][:, None], below["prob"][:, None], edge)
        contrib = g * V[:, lo:hi, :]
        V[:, lv["inner"], :] = np.add.reduceat(contrib, lv["starts"], axis=1)

    m0 = cg.num_action_slots
    vals = V[:, cg.pair_child, cg.pair_owner]
    reach = R[:, cg.pair_node]
    U1 = np.zeros((B, m0))
    U2 = np.zeros((B, m0))
    if len(slots):
        U1[:, slots] = np.add.reduceat(reach * vals, slot_starts, axis=1)
        U2[:, slots] = np.add.reduceat(MU[:, cg.pair_mslot] * vals, slot_starts, axis=1)
    KH = S[:, cg.mem_node, cg.mem_owner]
    return U1, U2, KH
