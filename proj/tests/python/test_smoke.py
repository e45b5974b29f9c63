import math

import pytest

import gumbel_sampling as gs


def test_rng_is_counter_based():
    a = gs.RngState(5)
    b = gs.RngState(5)
    assert [a.uniform() for _ in range(4)] == [b.uniform() for _ in range(4)]
    assert a.counter == 4
    assert a.fork(3).stream_id == 3
    with pytest.raises(ValueError):
        a.fork(0)


def test_probs_and_gumbel_max():
    logits = [math.log(8.0), math.log(2.0)]
    assert gs.categorical_probs(logits) == pytest.approx([0.8, 0.2])
    rng = gs.RngState(1)
    hits = sum(gs.gumbel_max(logits, rng)[0] == 0 for _ in range(20000))
    assert abs(hits / 20000 - 0.8) < 0.015


def test_perturb_one_uniform_per_class():
    rng = gs.RngState(2)
    values = gs.perturb([0.0, 1.0, -1.0], rng)
    assert len(values) == 3
    assert rng.counter == 3


def test_topk_and_sequential():
    rng = gs.RngState(3)
    idx, vals = gs.gumbel_topk([0.1, 0.5, -0.3, 1.2], 3, rng)
    assert len(set(idx)) == 3
    assert vals == sorted(vals, reverse=True)
    seq = gs.sequential_wor([0.1, 0.5, -0.3, 1.2], 4, rng)
    assert sorted(seq) == [0, 1, 2, 3]
    total = sum(gs.plackett_luce_prob([0.0, 1.0, 2.0], [i, j])
                for i in range(3) for j in range(3) if i != j)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_top_down_nodes():
    rng = gs.RngState(4)
    nodes = gs.top_down([0.3, -0.2, 1.0, 0.0], rng, condition_max=2.0)
    assert len(nodes) == 4
    assert nodes[0]["m"] == 2.0
    assert math.isinf(nodes[0]["parent_m"])
    assert sorted(n["omega"] for n in nodes) == [0, 1, 2, 3]
    for n in nodes[1:]:
        assert n["m"] < n["parent_m"]


def test_relaxation_and_estimators():
    rng = gs.RngState(5)
    w = gs.gs_sample([0.0, 1.0, 2.0], 0.5, rng)
    assert sum(w) == pytest.approx(1.0)
    hard, soft = gs.st_gs_sample([0.0, 1.0, 2.0], 0.5, rng)
    assert sorted(hard) == [0.0, 0.0, 1.0]
    assert hard.index(1.0) == soft.index(max(soft))
    report = gs.estimate("reinforce", [0.0, 0.0], [1.0, 0.0], rng, n_samples=20000)
    assert report["oracle_grad"] == pytest.approx([0.25, -0.25])
    assert report["grad_mean"][0] == pytest.approx(0.25, abs=4 * report["grad_std_err"][0])
    assert gs.log_convexity_bound(5) == 0.25


def test_errors_map_to_python_exceptions():
    rng = gs.RngState(6)
    with pytest.raises(ValueError):
        gs.categorical_probs([])
    with pytest.raises(ValueError):
        gs.gumbel_topk([0.0, 1.0], 3, rng)
    with pytest.raises(ValueError):
        gs.estimate("nosuch", [0.0, 1.0], [1.0, 2.0], rng)
    with pytest.raises(ValueError):
        gs.top_down([0.0, 1.0], rng, partition="halves")


def test_verify_suite():
    assert "exactness" in gs.suite_names()
    reports = gs.verify("exactness", 3)
    assert reports[0]["suite"] == "exactness"
    assert reports[0]["pass"]
