"""Batched payoff-block kernels with a compiled backend and a numpy fallback.

The compiled extension is used when it imports; set ``EFGPATH_PURE=1`` to
force the numpy version.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels
from .compiled import CompiledGame

try:
    if os.environ.get("EFGPATH_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "numpy"


def _as_batch(x: np.ndarray) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=float)
    return x[None, :] if x.ndim == 1 else x


def infoset_values(cg: CompiledGame, P, Q, MU, sgpe: bool = False, backend: str | None = None):
    """Per-slot payoff blocks and per-member belief kernels.

    ``P`` prices every move, ``Q`` replaces it for the moves a slot's owner
    makes after the slot's infoset.  Rows of ``P``, ``Q``, ``MU`` are
    independent states.  Returns ``(U1, U2, KH)``:

    * ``U1[s]``: sum over members h of reach(h) * value of the slot's child,
      where reach is from the root (or from the nearest subgame root when
      ``sgpe``);
    * ``U2[s]``: the same with ``MU`` weights in place of reach;
    * ``KH[m]``: reach of member m without its owner's own moves.
    """
    P, Q, MU = _as_batch(P), _as_batch(Q), _as_batch(MU)
    backend = backend or BACKEND
    if backend == "numpy":
        return _pykernels.infoset_values(cg, P, Q, MU, sgpe)
    if _ckernels is None:
        raise RuntimeError("compiled kernels are not available")
    B = P.shape[0]
    U1 = np.empty((B, cg.num_action_slots))
    U2 = np.empty((B, cg.num_action_slots))
    KH = np.empty((B, cg.num_member_slots))
    _ckernels.infoset_values(
        cg.parent, cg.edge_player, cg.edge_slot, cg.edge_prob, cg.actor, cg.child_start,
        cg.child_count, cg.payoff, cg.subroot, cg.pair_slot, cg.pair_node, cg.pair_child,
        cg.pair_owner, cg.pair_mslot, cg.mem_node, cg.mem_owner, P, Q, MU, bool(sgpe),
        U1, U2, KH,
    )
    return U1, U2, KH
