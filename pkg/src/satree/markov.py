"""Exact analysis of the push-down depth chain.

The chain models the depth drift of the item of recency rank i between its
own accesses: from depth j it is pushed to j+1 with probability 2^-j and
stays otherwise; depth i-1 absorbs.  Everything here is exact dynamic
programming over the state vector, no simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class DepthDistribution:
    """Finite probability vector over depths/states 0..len-1."""

    probs: np.ndarray = field()

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=np.float64)
        if self.probs.ndim != 1 or self.probs.size == 0:
            raise ValueError("probs must be a non-empty 1-d vector")
        if (self.probs < 0).any() or abs(float(self.probs.sum()) - 1.0) > 1e-12:
            raise ValueError("probs must be non-negative and sum to 1")

    def mean(self) -> float:
        return float(self.probs @ np.arange(self.probs.size))

    def survival(self, padded_len=None) -> np.ndarray:
        """P[X > z] for z = 0..padded_len-1."""
        p = self.probs
        if padded_len is not None and padded_len > p.size:
            p = np.concatenate([p, np.zeros(padded_len - p.size)])
        return 1.0 - p.cumsum()


def _step(probs, push):
    """One chain step: probs over states, push[j] = down-transition probability."""
    nxt = probs * (1.0 - push)
    nxt[1:] += probs[:-1] * push[:-1]
    return nxt


def _push_vector(i):
    push = np.exp2(-np.arange(i, dtype=np.float64))
    push[i - 1] = 0.0  # deepest state absorbs
    return push


def walk_distribution(i, w) -> DepthDistribution:
    """Exact state distribution after a w-step walk from state 0 on the i-state chain."""
    i, w = int(i), int(w)
    if i < 1 or w < 0:
        raise ValueError("need i >= 1 and w >= 0")
    probs = np.zeros(i)
    probs[0] = 1.0
    push = _push_vector(i)
    for _ in range(w):
        probs = _step(probs, push)
    return DepthDistribution(probs / probs.sum())


def expected_state(i, w) -> float:
    """E of the walk's final state; below ceil(log2 w) + 1 for every w >= 2."""
    return walk_distribution(i, w).mean()


def expected_state_curve(i, w_max) -> np.ndarray:
    """expected_state(i, w) for all w = 0..w_max in one DP sweep."""
    i, w_max = int(i), int(w_max)
    states = np.arange(i, dtype=np.float64)
    probs = np.zeros(i)
    probs[0] = 1.0
    push = _push_vector(i)
    out = np.empty(w_max + 1)
    out[0] = 0.0
    for w in range(1, w_max + 1):
        probs = _step(probs, push)
        out[w] = float(probs @ states)
    return out


def binomial_identity(w) -> float:
    """Mean of Binomial(w, 1/w) evaluated term by term; equals 1 for every w >= 1."""
    w = int(w)
    if w < 1:
        raise ValueError("need w >= 1")
    total = 0.0
    for i in range(w + 1):
        stay = (w - 1) / w
        # 0^0 := 1 so the w = 1 endpoint is well defined
        term = math.comb(w, i) * stay ** (w - i) * (1 / w) ** i * i if i else 0.0
        total += term
    return total


def concavity_check(i, w_max, tol=1e-12) -> bool:
    """True iff the first differences of expected_state are non-increasing over 1..w_max."""
    if w_max < 2:
        raise ValueError("need w_max >= 2")
    curve = expected_state_curve(i, w_max)
    diffs = np.diff(curve)
    return bool((np.diff(diffs) <= tol).all())


def stochastically_leq(x: DepthDistribution, y: DepthDistribution, tol=0.0) -> bool:
    """True iff P[X > z] <= P[Y > z] + tol at every threshold (supports zero-padded)."""
    m = max(x.probs.size, y.probs.size)
    return bool((x.survival(m) <= y.survival(m) + tol).all())
