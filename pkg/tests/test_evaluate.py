import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from senseclust.dataset import ContextInstance, Dataset
from senseclust.evaluate import (Labeling, ari, confusion_csv, confusion_matrix,
                                 evaluate)

from oracles import pair_counting_ari


def make_dataset(rows):
    """rows: (context_id, target, gold_sense or None)."""
    instances, by_target = [], {}
    for cid, target, gold in rows:
        by_target.setdefault(target, []).append(len(instances))
        instances.append(ContextInstance(context_id=cid, target=target,
                                         gold_sense=gold, target_spans=[],
                                         raw_context="", tokens=[]))
    return Dataset(instances=instances, by_target=by_target)


# --- ari -------------------------------------------------------------------

def test_relabeling_identity():
    assert ari([1, 1, 2, 2], [2, 2, 1, 1]) == 1.0


def test_all_in_one_is_zero():
    assert ari([1, 1, 2, 2], [9, 9, 9, 9]) == 0.0


def test_hand_case():
    assert ari([1, 1, 1, 2, 2, 2], [1, 1, 2, 2, 3, 3]) == pytest.approx(0.8 / 3.3)


def test_degenerate_identical_partitions():
    assert ari([1, 1, 1], [7, 7, 7]) == 1.0
    assert ari([1, 2, 3], ["a", "b", "c"]) == 1.0
    assert ari([1], [5]) == 1.0


def test_degenerate_different_trivial_partitions():
    # all-one vs all-singletons: both sums of pair counts degenerate
    assert ari([1, 1, 1], [1, 2, 3]) == 0.0


def test_errors():
    with pytest.raises(ValueError):
        ari([1, 2], [1])
    with pytest.raises(ValueError):
        ari([], [])


def test_symmetry():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(2, 15))
        g = list(rng.integers(0, 4, size=n))
        p = list(rng.integers(0, 4, size=n))
        assert ari(g, p) == pytest.approx(ari(p, g), abs=1e-12)


def test_self_ari_is_one():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(1, 15))
        x = list(rng.integers(0, 4, size=n))
        assert ari(x, x) == 1.0


@given(st.lists(st.integers(0, 3), min_size=2, max_size=12),
       st.permutations(["a", "b", "c", "d"]))
def test_relabeling_invariance(gold, mapping):
    pred = [mapping[g] for g in gold]
    assert ari(gold, pred) == 1.0


def test_matches_pair_counting_oracle():
    rng = np.random.default_rng(2)
    for _ in range(500):
        n = int(rng.integers(1, 13))
        g = list(rng.integers(0, 4, size=n))
        p = list(rng.integers(0, 4, size=n))
        assert ari(g, p) == pytest.approx(pair_counting_ari(g, p), abs=1e-12)


# --- evaluate --------------------------------------------------------------

def test_perfect_single_word():
    ds = make_dataset([("c1", "w", "1"), ("c2", "w", "1"), ("c3", "w", "2")])
    report = evaluate(ds, Labeling({"c1": "a", "c2": "a", "c3": "b"}))
    assert report.per_word["w"] == (1.0, 3)
    assert report.aggregate_weighted == 1.0
    assert report.aggregate_macro == 1.0


def test_aggregation_arithmetic():
    ds = make_dataset([
        ("a1", "w1", "1"), ("a2", "w1", "1"), ("a3", "w1", "2"),
        ("b1", "w2", "1"),
    ])
    labels = Labeling({"a1": "x", "a2": "x", "a3": "y", "b1": "x"})
    # w1 perfect (ari 1.0 over 3), w2 single instance but force ari 0 via
    # a two-instance word with a wrong split
    report = evaluate(ds, labels)
    assert report.per_word["w1"] == (1.0, 3)
    assert report.per_word["w2"] == (1.0, 1)

    ds2 = make_dataset([
        ("a1", "w1", "1"), ("a2", "w1", "1"), ("a3", "w1", "2"),
        ("b1", "w2", "1"), ("b2", "w2", "2"),
    ])
    labels2 = Labeling({"a1": "x", "a2": "x", "a3": "y",
                        "b1": "x", "b2": "x"})
    report2 = evaluate(ds2, labels2)
    assert report2.per_word["w2"][0] == 0.0
    # weighted = (1.0*3 + 0.0*2)/5, macro = (1.0 + 0.0)/2
    assert report2.aggregate_weighted == pytest.approx(0.6)
    assert report2.aggregate_macro == pytest.approx(0.5)


def test_spec_weighted_macro_example():
    ds = make_dataset([
        ("a1", "w1", "1"), ("a2", "w1", "1"), ("a3", "w1", "2"),
        ("b1", "w2", "1"), ("b2", "w2", "2"),
    ])
    # w1: ari 1.0 on 3 contexts; w2: ari 0.0 on 2 contexts
    labels = Labeling({"a1": "x", "a2": "x", "a3": "y", "b1": "z", "b2": "z"})
    report = evaluate(ds, labels)
    assert report.aggregate_weighted == pytest.approx((1.0 * 3 + 0.0 * 2) / 5)
    assert report.aggregate_macro == pytest.approx(0.5)


def test_instances_without_gold_are_excluded_and_counted():
    ds = make_dataset([("c1", "w", "1"), ("c2", "w", None), ("c3", "w", "2")])
    report = evaluate(ds, Labeling({"c1": "a", "c3": "b"}))
    assert report.n_excluded == 1
    assert report.per_word["w"][1] == 2


def test_no_gold_anywhere_errors():
    ds = make_dataset([("c1", "w", None)])
    with pytest.raises(ValueError, match="gold"):
        evaluate(ds, Labeling({"c1": "a"}))


def test_missing_prediction_errors():
    ds = make_dataset([("c1", "w", "1")])
    with pytest.raises(ValueError, match="c1"):
        evaluate(ds, Labeling({}))


def test_report_tsv_shape():
    ds = make_dataset([("c1", "w", "1"), ("c2", "w", "2")])
    report = evaluate(ds, Labeling({"c1": "a", "c2": "b"}))
    text = report.to_tsv()
    lines = text.strip().split("\n")
    assert lines[0] == "word\tn\tari"
    assert lines[-2].startswith("aggregate_weighted\t")
    assert lines[-1].startswith("aggregate_macro\t")


# --- confusion matrices ----------------------------------------------------

def test_confusion_basic():
    rows, cols, counts = confusion_matrix([1, 1, 2], ["a", "a", "b"])
    assert rows == [1, 2] and cols == ["a", "b"]
    np.testing.assert_array_equal(counts, [[2, 0], [0, 1]])


def test_confusion_single_predicted_column():
    rows, cols, counts = confusion_matrix([1, 2], ["a", "a"])
    assert cols == ["a"]
    np.testing.assert_array_equal(counts, [[1], [1]])


def test_confusion_row_sums_and_total():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 20))
        g = list(rng.integers(0, 4, size=n))
        p = list(rng.integers(0, 4, size=n))
        rows, _, counts = confusion_matrix(g, p)
        assert counts.sum() == n
        for lab, row in zip(rows, counts):
            assert row.sum() == g.count(lab)


def test_confusion_csv_headers():
    rows, cols, counts = confusion_matrix([1, 1, 2], ["a", "a", "b"])
    text = confusion_csv(rows, cols, counts)
    assert text.splitlines()[0] == "gold\\pred,a,b"
    assert text.splitlines()[1] == "1,2,0"
