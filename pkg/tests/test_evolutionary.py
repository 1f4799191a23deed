import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tempocent.centrality import CentralityMeasure, compute_centrality, eigenvector_centrality
from tempocent.evolutionary import SmoothingConfig, evolutionary_centrality, smooth_adjacency
from tempocent.graph import NodeRegistry, ShapeError, SlotGraph

from oracles import random_weights

REG2 = NodeRegistry(("a", "b"))


def slots_from(mats, registry=None):
    registry = registry or NodeRegistry(tuple(f"n{i}" for i in range(len(mats[0]))))
    return [SlotGraph(t, m, registry) for t, m in enumerate(mats)]


def hub_then_isolated():
    """Node 0 is a hub in slot 0 and has no contacts in slot 1."""
    s0 = np.zeros((6, 6))
    s0[0, 1:] = s0[1:, 0] = 1
    s1 = np.zeros((6, 6))
    for u, v in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]:
        s1[u, v] = s1[v, u] = 1
    return slots_from([s0, s1])


def test_config_range():
    with pytest.raises(ValueError):
        SmoothingConfig(-0.1)
    with pytest.raises(ValueError):
        SmoothingConfig(1.5)


def test_smoothing_arithmetic():
    cur, prev = slots_from([[[0, 1], [1, 0]], [[0, 0], [0, 0]]], REG2)[::-1]
    out = smooth_adjacency(prev, cur, SmoothingConfig(0.5))
    assert out.weights.tolist() == [[0, 0.5], [0.5, 0]]


def test_smoothing_endpoints_and_first_slot():
    rng = np.random.default_rng(0)
    prev, cur = slots_from([random_weights(rng, 7), random_weights(rng, 7)])
    assert np.array_equal(smooth_adjacency(cur, prev, SmoothingConfig(0.0)).weights, cur.weights)
    assert np.array_equal(smooth_adjacency(cur, prev, SmoothingConfig(1.0)).weights, prev.weights)
    assert smooth_adjacency(cur, None, SmoothingConfig(0.7)) is cur


def test_smoothing_matches_elementwise_oracle():
    rng = np.random.default_rng(9)
    a_prev, a_cur = random_weights(rng, 10), random_weights(rng, 10)
    prev, cur = slots_from([a_prev, a_cur])
    out = smooth_adjacency(cur, prev, SmoothingConfig(0.3)).weights
    for i in range(10):
        for j in range(10):
            assert out[i, j] == pytest.approx(0.7 * a_cur[i, j] + 0.3 * a_prev[i, j], abs=1e-12)


def test_smoothing_shape_mismatch():
    a = SlotGraph(0, np.zeros((2, 2)), REG2)
    b = SlotGraph(1, np.zeros((3, 3)), NodeRegistry(("a", "b", "c")))
    with pytest.raises(ShapeError):
        smooth_adjacency(b, a)


@given(
    st.integers(1, 8),
    st.integers(0, 2**31 - 1),
    st.floats(0, 1),
)
def test_smoothed_matrix_properties(n, seed, alpha):
    rng = np.random.default_rng(seed)
    a_prev, a_cur = random_weights(rng, n), random_weights(rng, n)
    prev, cur = slots_from([a_prev, a_cur])
    w = smooth_adjacency(cur, prev, SmoothingConfig(alpha)).weights
    assert np.array_equal(w, w.T) and not np.diag(w).any() and (w >= 0).all()
    lo, hi = np.minimum(a_prev, a_cur), np.maximum(a_prev, a_cur)
    assert (lo - 1e-12 <= w).all() and (w <= hi + 1e-12).all()
    if alpha > 0:
        assert (w[(a_cur == 0) & (a_prev > 0)] > 0).all()


@pytest.mark.parametrize("measure", list(CentralityMeasure))
def test_alpha_zero_is_plain_centrality(measure):
    rng = np.random.default_rng(1)
    slots = slots_from([random_weights(rng, 8) for _ in range(3)])
    evo = evolutionary_centrality(slots, measure, SmoothingConfig(0.0))
    for g, res in zip(slots, evo):
        assert np.array_equal(res.scores, compute_centrality(g, measure).scores)
        assert res.metadata["alpha"] == 0.0


def test_single_slot_ignores_alpha():
    (g,) = slots_from([random_weights(np.random.default_rng(2), 6)])
    for alpha in (0.2, 0.9):
        (res,) = evolutionary_centrality([g], "pagerank", SmoothingConfig(alpha))
        assert np.array_equal(res.scores, compute_centrality(g, "pagerank").scores)


def test_slots_must_be_consecutive():
    reg = NodeRegistry(("a", "b"))
    gs = [SlotGraph(0, np.zeros((2, 2)), reg), SlotGraph(2, np.zeros((2, 2)), reg)]
    with pytest.raises(ValueError, match="consecutive"):
        evolutionary_centrality(gs, "degree")
    with pytest.raises(ValueError):
        evolutionary_centrality([], "degree")


def test_history_keeps_vanished_hub_visible():
    slots = hub_then_isolated()
    plain = eigenvector_centrality(slots[1])
    assert plain.scores[0] == 0.0
    evo = evolutionary_centrality(slots, "eigenvector", SmoothingConfig(0.5))
    assert evo[1].scores[0] > 0
    # degree on the smoothed, binarized slot sees the slot-0 edges as well
    deg = evolutionary_centrality(slots, "degree", SmoothingConfig(0.5))
    assert deg[1].scores[0] == 5


def test_raw_previous_slot_not_recursive():
    rng = np.random.default_rng(3)
    mats = [random_weights(rng, 5) for _ in range(3)]
    slots = slots_from(mats)
    evo = evolutionary_centrality(slots, "eigenvector", SmoothingConfig(0.4))
    direct = eigenvector_centrality(SlotGraph(2, 0.6 * mats[2] + 0.4 * mats[1], slots[0].registry))
    np.testing.assert_allclose(evo[2].scores, direct.scores, atol=1e-12)
