"""Exact analysis of the push-down depth chain.

An item of recency rank i drifts down between its own accesses: at depth j
each deeper request pushes it with probability 2^-j, and depth i-1 absorbs.
The expected final state after w push opportunities stays below
ceil(log2 w) + 1 and is concave in w.
"""

import numpy as np

from satree import binomial_identity, concavity_check, expected_state_curve, walk_distribution

print("expected walk state vs the ceil(log2 w) + 1 envelope")
print(f"{'w':>6}", end="")
for i in (4, 8, 16, 64):
    print(f"  E[i={i:>2}]", end="")
print(f"  {'bound':>6}")
for w in (2, 4, 8, 16, 64, 256, 1024):
    print(f"{w:>6}", end="")
    for i in (4, 8, 16, 64):
        print(f"  {expected_state_curve(i, w)[w]:7.3f}", end="")
    print(f"  {np.ceil(np.log2(w)) + 1:>6.0f}")

print("\nconcavity of E[state] in w:")
for i in (4, 16, 64):
    print(f"  i={i:>2}: first differences non-increasing -> {concavity_check(i, 1024)}")

print("\nbinomial drift identity (should be 1 for every w):")
for w in (1, 2, 5, 20, 50):
    print(f"  w={w:>2}: {binomial_identity(w):.12f}")

d = walk_distribution(5, 6)
print(f"\nfull distribution for i=5, w=6: {np.round(d.probs, 4)} (mean {d.mean():.3f})")
