"""The four relocation policies and the static tree builder."""

import itertools

import numpy as np
import pytest

from satree import (
    CostLedger,
    Policy,
    RankTable,
    TreeState,
    WsAccumulator,
    build_static_mfu,
    expected_path_length,
    is_mru,
    rank,
    serve_max_push,
    serve_move_half,
    serve_random_push,
)


class ScriptedRng:
    """Feeds predetermined child bits into the push-path sampler."""

    def __init__(self, bits):
        self.bits = list(bits)

    def integers(self, low, high, size=None):
        assert (low, high) == (0, 2)
        out = np.array([self.bits.pop(0) for _ in range(size)], dtype=np.int64)
        return out


def fresh(n):
    t = TreeState(n)
    return t, RankTable.from_tree(t), CostLedger()


def test_move_half_root_request_is_free():
    t, rt, led = fresh(7)
    serve_move_half(t, rt, led, 0)
    assert led.per_request == [(0, 0)]
    assert t.guest.tolist() == list(range(7))


def test_move_half_depth_one_swaps_with_root():
    t, rt, led = fresh(7)
    serve_move_half(t, rt, led, 1)
    assert led.per_request == [(1, 1)]
    assert int(t.host[1]) == 0 and int(t.host[0]) == 1


def test_move_half_opposite_branch_example():
    # u = item 7 at depth 3; the max-rank depth-1 item is item 2 across the root
    t, rt, led = fresh(15)
    serve_move_half(t, rt, led, 7)
    a, j = led.per_request[0]
    assert (a, j) == (3, 7)  # distance 4 interchange costs 2*4 - 1
    assert a + j <= 4 * a <= 12
    assert int(t.host[7]) == 2  # u landed at depth 1
    assert int(t.host[2]) == 7
    t.check_bijection()


def test_move_half_per_request_bound_fuzz():
    rng = np.random.default_rng(2)
    t, rt, led = fresh(31)
    ws = WsAccumulator()
    for v in rng.integers(0, 31, size=3000):
        serve_move_half(t, rt, led, int(v), ws=ws)
    assert all(a + j <= 4 * a for a, j in led.per_request if a)
    assert all((a, j) == (0, 0) for a, j in led.per_request if not a)
    t.check_bijection()


def test_random_push_root_request_is_free():
    t, rt, led = fresh(7)
    assert serve_random_push(t, rt, led, 0, ScriptedRng([])) is None
    assert led.per_request == [(0, 0)]
    assert t.guest.tolist() == list(range(7))


def test_random_push_path_hits_accessed_server():
    # u = item 2 at depth 1; the scripted path lands on u's own server
    t, rt, led = fresh(7)
    path = serve_random_push(t, rt, led, 2, ScriptedRng([1]))
    assert path == [0, 2]
    assert led.per_request == [(1, 2)]
    assert t.guest.tolist() == [2, 1, 0, 3, 4, 5, 6]


def test_random_push_path_lands_on_sibling():
    # u = item 2 at depth 1; the path ends at server 1, so three items rotate
    t, rt, led = fresh(7)
    path = serve_random_push(t, rt, led, 2, ScriptedRng([0]))
    assert path == [0, 1]
    assert led.per_request == [(1, 4)]  # 1 up + 1 cascade + 2 for the end-of-path trip
    assert t.guest.tolist() == [2, 0, 1, 3, 4, 5, 6]
    assert led.per_request[0][0] + led.per_request[0][1] <= 5 * 1


def test_random_push_depths_never_decrease_except_requested():
    rng = np.random.default_rng(9)
    t, rt, led = fresh(31)
    for v in rng.integers(0, 31, size=2000):
        before = t.depths[t.host].copy()
        serve_random_push(t, rt, led, int(v), rng)
        after = t.depths[t.host]
        others = np.arange(31) != int(v)
        assert (after[others] >= before[others]).all()
    assert all(a + j <= 5 * a for a, j in led.per_request if a)
    t.check_bijection()


def test_random_push_is_deterministic_given_seed():
    def final_state(seed):
        p = Policy("random-push", 15, seed=seed)
        for v in np.random.default_rng(4).integers(0, 15, size=500):
            p.serve(int(v))
        return p.tree.guest.tolist(), p.ledger.per_request

    assert final_state(123) == final_state(123)
    assert final_state(123) != final_state(124)


def test_max_push_root_request_only_updates_rank():
    t, rt, led = fresh(7)
    serve_max_push(t, rt, led, 0)
    assert led.per_request == [(0, 0)]
    assert rank(rt, 0) == 1


def test_max_push_depth_one_exchange():
    t, rt, led = fresh(3)
    serve_max_push(t, rt, led, 2)
    assert led.per_request == [(1, 2)]  # two unit relocations
    assert t.guest.tolist() == [2, 1, 0]
    assert is_mru(t, rt)


def test_max_push_worst_layout_quadratic_hops():
    # max-rank items of levels 1 and 2 placed off the requested branch
    t = TreeState(15)
    rt = RankTable.from_tree(t)
    stamps = rt.stamps.copy()
    stamps[1], stamps[2] = stamps[2], stamps[1]  # level 1 max rank now at server 1
    stamps[3], stamps[6] = stamps[6], stamps[3]  # level 2 max rank now at server 3
    rt.stamps = stamps
    assert is_mru(t, rt)
    led = CostLedger()
    serve_max_push(t, rt, led, 14)  # max-rank leaf, k = 3
    a, j = led.per_request[0]
    assert a == 3
    assert j == 10  # dist(3,14) + dist(1,3) + dist(0,1) + dist(14,0)
    assert j >= 3 * (3 - 1) / 2
    assert is_mru(t, rt)


def test_max_push_rejects_non_mru_tree():
    t = TreeState(7, guests=[6, 1, 2, 3, 4, 5, 0])
    rt = RankTable(7)
    with pytest.raises(ValueError, match="MRU"):
        serve_max_push(t, rt, CostLedger(), 3)


def test_max_push_keeps_mru_under_fuzz():
    rng = np.random.default_rng(11)
    p = Policy("max-push", 15)
    for v in rng.integers(0, 15, size=1000):
        p.serve(int(v))
        assert is_mru(p.tree, p.ranks)
    p.tree.check_bijection()


def test_fixed_policy_never_adjusts():
    p = Policy("fixed", 7)
    for v in np.random.default_rng(1).integers(0, 7, size=300):
        p.serve(int(v))
    assert p.ledger.adjust_total == 0
    assert p.tree.guest.tolist() == list(range(7))


def test_static_mfu_uniform_keeps_identity_order():
    t = build_static_mfu(np.full(7, 1 / 7))
    assert t.guest.tolist() == list(range(7))


def test_static_mfu_small_example():
    t = build_static_mfu([0.5, 0.3, 0.2])
    assert int(t.host[0]) == 0
    assert expected_path_length(t, [0.5, 0.3, 0.2]) == pytest.approx(0.5)


def test_static_mfu_matches_exhaustive_minimum():
    rng = np.random.default_rng(13)
    for _ in range(5):
        freq = rng.random(7)
        freq /= freq.sum()
        built = expected_path_length(build_static_mfu(freq), freq)
        depths = [0, 1, 1, 2, 2, 2, 2]
        best = min(
            sum(freq[perm[s]] * depths[s] for s in range(7))
            for perm in itertools.permutations(range(7))
        )
        assert built == pytest.approx(best, abs=1e-12)
        # higher frequency never sits deeper
        t = build_static_mfu(freq)
        for a in range(7):
            for b in range(7):
                if freq[a] > freq[b]:
                    assert t.item_depth(a) <= t.item_depth(b)


def test_static_mfu_validation():
    with pytest.raises(ValueError):
        build_static_mfu([0.5, 0.4])  # n = 2 is not a complete size
    with pytest.raises(ValueError):
        build_static_mfu([0.5, 0.4, 0.2])  # sums above 1
    with pytest.raises(ValueError):
        build_static_mfu([1.5, -0.3, -0.2])


def test_expected_path_length_examples():
    t = TreeState(3)
    assert expected_path_length(t, [1.0, 0.0, 0.0]) == 0.0
    assert expected_path_length(t, np.full(3, 1 / 3)) == pytest.approx(2 / 3)
    assert expected_path_length(TreeState(7), np.full(7, 1 / 7)) == pytest.approx(10 / 7)


def test_policy_requires_known_kind_and_mfu_frequencies():
    with pytest.raises(ValueError):
        Policy("mystery", 7)
    with pytest.raises(ValueError):
        Policy("static-mfu", 7)
    p = Policy("static-mfu", 7, freq=np.full(7, 1 / 7))
    for v in (3, 5, 3):
        p.serve(v)
    assert p.ledger.adjust_total == 0
