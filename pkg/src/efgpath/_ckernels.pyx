# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled tree sweeps producing the per-(infoset, action) payoff blocks."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t idx_t


def infoset_values(const idx_t[::1] parent, const idx_t[::1] edge_player,
                   const idx_t[::1] edge_slot, const double[::1] edge_prob,
                   const idx_t[::1] actor, const idx_t[::1] child_start,
                   const idx_t[::1] child_count, const double[:, ::1] payoff,
                   const unsigned char[::1] subroot,
                   const idx_t[::1] pair_slot, const idx_t[::1] pair_node,
                   const idx_t[::1] pair_child, const idx_t[::1] pair_owner,
                   const idx_t[::1] pair_mslot, const idx_t[::1] mem_node,
                   const idx_t[::1] mem_owner,
                   const double[:, ::1] P, const double[:, ::1] Q, const double[:, ::1] MU,
                   bint sgpe, double[:, ::1] U1, double[:, ::1] U2, double[:, ::1] KH):
    cdef Py_ssize_t N = parent.shape[0]
    cdef Py_ssize_t n = payoff.shape[1]
    cdef Py_ssize_t B = P.shape[0]
    cdef Py_ssize_t npairs = pair_slot.shape[0]
    cdef Py_ssize_t nmem = mem_node.shape[0]
    cdef double[::1] R = np.empty(N)
    cdef double[:, ::1] S = np.empty((N, n))
    cdef double[:, ::1] V = np.empty((N, n))
    cdef Py_ssize_t b, c, p, i, k, ch, e
    cdef idx_t j, a
    cdef double f, g, acc

    for b in range(B):
        # forward: reach from the root (or from the nearest subgame root)
        R[0] = 1.0
        for i in range(n):
            S[0, i] = 1.0
        for c in range(1, N):
            p = parent[c]
            j = edge_player[c]
            f = P[b, edge_slot[c]] if j >= 0 else edge_prob[c]
            if sgpe and subroot[c]:
                R[c] = 1.0
                for i in range(n):
                    S[c, i] = 1.0
            else:
                R[c] = R[p] * f
                for i in range(n):
                    S[c, i] = S[p, i] if i == j else S[p, i] * f
        # backward: continuation values, owner moves priced by Q
        for c in range(N - 1, -1, -1):
            a = actor[c]
            if a == -2:
                for i in range(n):
                    V[c, i] = payoff[c, i]
                continue
            for i in range(n):
                acc = 0.0
                for k in range(child_count[c]):
                    ch = child_start[c] + k
                    if a == -1:
                        g = edge_prob[ch]
                    elif a == i:
                        g = Q[b, edge_slot[ch]]
                    else:
                        g = P[b, edge_slot[ch]]
                    acc += g * V[ch, i]
                V[c, i] = acc
        for k in range(U1.shape[1]):
            U1[b, k] = 0.0
            U2[b, k] = 0.0
        for e in range(npairs):
            f = V[pair_child[e], pair_owner[e]]
            U1[b, pair_slot[e]] += R[pair_node[e]] * f
            U2[b, pair_slot[e]] += MU[b, pair_mslot[e]] * f
        for e in range(nmem):
            KH[b, e] = S[mem_node[e], mem_owner[e]]
