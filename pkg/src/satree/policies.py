"""Online relocation policies sharing one serve interface."""

from __future__ import annotations

import numpy as np

from .tree import CostLedger, TreeState, access, depth, interchange, relocate_chain, tree_distance
from .workset import (
    RankTable,
    WsAccumulator,
    _flog2,
    max_rank_item_at_depth,
    rank_order,
    record,
)

POLICY_KINDS = ("move-half", "random-push", "max-push", "static-mfu", "fixed")


def serve_move_half(t: TreeState, rt: RankTable, ledger: CostLedger, u, ws=None) -> int:
    """Access u at depth k, then interchange it with the max-rank item at depth k//2."""
    ledger.begin_request()
    k = access(t, u, ledger)
    if k >= 1:
        v = max_rank_item_at_depth(rt, t, k // 2)
        assert v != u
        interchange(t, u, v, ledger)
    a, j = ledger.end_request()
    assert a + j <= 4 * a, "per-request cost exceeded 4x access"
    record(rt, ws, u)
    return k


def sample_push_path(rng, k) -> list[int]:
    """Root-to-depth-k server path with uniformly random child choices."""
    path = [0]
    for bit in rng.integers(0, 2, size=k):
        path.append(2 * path[-1] + 1 + int(bit))
    return path


def serve_random_push(t: TreeState, rt: RankTable, ledger: CostLedger, u, rng, ws=None):
    """Promote u to the root and push one random root-to-depth-k path down one level.

    The item displaced off the end of the path fills u's vacated server.
    Returns the sampled path (None when u was already at the root), so
    instrumented runs can recover which items moved.
    """
    ledger.begin_request()
    k = access(t, u, ledger)
    path = None
    if k > 0:
        s = int(t.host[u])
        path = sample_push_path(rng, k)
        old = [int(t.guest[p]) for p in path]
        t.guest[0] = u
        t.host[u] = 0
        for j in range(k):
            t.guest[path[j + 1]] = old[j]
            t.host[old[j]] = path[j + 1]
        extra = 0
        if path[k] != s:
            w = old[k]
            t.guest[s] = w
            t.host[w] = s
            extra = tree_distance(path[k], s)
        # u up to the root, the path pushed down, plus the end-of-path item's trip
        ledger.adjust_total += k + k + extra
    a, j = ledger.end_request()
    assert a + j <= 5 * a, "per-request cost exceeded 5x access"
    record(rt, ws, u)
    return path


def serve_max_push(t: TreeState, rt: RankTable, ledger: CostLedger, u, ws=None) -> int:
    """Restore the exact MRU layout by demoting each level's max-rank item one level.

    Requires an MRU tree on entry; each relocation may cross the whole tree,
    which is what makes strict MRU maintenance quadratic in the access depth.
    """
    order = rank_order(rt)
    if not (t.depths[t.host[order]] == _flog2(t.n)).all():
        raise ValueError("max-push requires an MRU tree")
    ledger.begin_request()
    k = access(t, u, ledger)
    if k > 0:
        # on an MRU tree the max-rank item of level i is the item of rank 2^(i+1)-1
        demoted = [int(order[(1 << (i + 1)) - 2]) for i in range(k)]
        dests = [int(t.host[u])] + [int(t.host[w]) for w in demoted[:0:-1]]
        moves = list(zip(demoted[::-1], dests)) + [(int(u), int(t.host[demoted[0]]))]
        relocate_chain(t, moves, ledger)
    ledger.end_request()
    record(rt, ws, u)
    return k


def serve_fixed(t: TreeState, rt: RankTable, ledger: CostLedger, u, ws=None) -> int:
    """Access only; the layout never changes."""
    ledger.begin_request()
    k = access(t, u, ledger)
    ledger.end_request()
    record(rt, ws, u)
    return k


def _check_freq(freq, n):
    freq = np.asarray(freq, dtype=np.float64)
    if freq.shape != (n,):
        raise ValueError(f"need one frequency per item, got shape {freq.shape} for n={n}")
    if (freq < 0).any():
        raise ValueError("frequencies must be non-negative")
    if abs(float(freq.sum()) - 1.0) > 1e-9:
        raise ValueError(f"frequencies must sum to 1, got {float(freq.sum())!r}")
    return freq


def build_static_mfu(freq) -> TreeState:
    """Place items top-down, left-to-right in descending frequency (ties by item id)."""
    freq = np.asarray(freq, dtype=np.float64)
    n = freq.shape[0]
    if not (n >= 1 and (n & (n + 1)) == 0):
        raise ValueError(f"item count must be 2^d - 1 for d >= 1, got {n}")
    freq = _check_freq(freq, n)
    order = sorted(range(n), key=lambda v: (-freq[v], v))
    return TreeState(n, guests=order)


def expected_path_length(t: TreeState, freq) -> float:
    """Mean access depth under the given item frequencies."""
    freq = _check_freq(freq, t.n)
    return float(sum(freq[v] * depth(t.host[v]) for v in range(t.n)))


class Policy:
    """One policy instance bound to its own tree, rank table and ledger."""

    def __init__(self, kind, n, seed=None, freq=None):
        if kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {kind!r}")
        self.kind = kind
        if kind == "static-mfu":
            if freq is None:
                raise ValueError("static-mfu needs an item frequency vector")
            self.tree = build_static_mfu(freq)
            if self.tree.n != n:
                raise ValueError("frequency vector length does not match n")
        else:
            self.tree = TreeState(n)
        self.ranks = RankTable.from_tree(self.tree)
        self.ledger = CostLedger()
        self.ws = WsAccumulator()
        self.rng = np.random.default_rng(seed) if kind == "random-push" else None

    def serve(self, u):
        if self.kind == "move-half":
            serve_move_half(self.tree, self.ranks, self.ledger, u, ws=self.ws)
        elif self.kind == "random-push":
            serve_random_push(self.tree, self.ranks, self.ledger, u, self.rng, ws=self.ws)
        elif self.kind == "max-push":
            serve_max_push(self.tree, self.ranks, self.ledger, u, ws=self.ws)
        else:
            serve_fixed(self.tree, self.ranks, self.ledger, u, ws=self.ws)
