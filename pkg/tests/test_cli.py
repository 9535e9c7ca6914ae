import subprocess
import sys

import pytest

from senseclust.cli import main
from senseclust.embeddings import write_embeddings

import synthetic


@pytest.fixture()
def workspace(tmp_path):
    model = synthetic.build_model(seed=0)
    write_embeddings(model, tmp_path / "emb.txt", fmt="text")
    write_embeddings(model, tmp_path / "emb.bin", fmt="binary")
    synthetic.write_dataset(tmp_path / "train.tsv", contexts_per_sense=10, seed=0)
    vocab = sorted(model.entries)
    corpus_lines = []
    for i in range(0, len(vocab) - 10, 7):
        corpus_lines.append(" ".join(vocab[i:i + 10]))
    (tmp_path / "corpus.txt").write_text("\n".join(corpus_lines) + "\n",
                                         encoding="utf-8")
    (tmp_path / "freqs.tsv").write_text(
        "".join(f"{w}\t{i + 1}\n" for i, w in enumerate(vocab)), encoding="utf-8")
    return tmp_path


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_build_idf_and_chi2(workspace):
    assert run_cli("build-idf", "--corpus", workspace / "corpus.txt",
                   "--out", workspace / "idf.tsv") == 0
    assert (workspace / "idf.tsv").read_text().startswith("# n_docs=")
    assert run_cli("build-chi2", "--dataset", workspace / "train.tsv",
                   "--out", workspace / "chi2.tsv") == 0
    assert "\t" in (workspace / "chi2.tsv").read_text()


def test_cluster_pipeline_and_determinism(workspace):
    run_cli("build-idf", "--corpus", workspace / "corpus.txt",
            "--out", workspace / "idf.tsv")
    args = ("cluster", "--embeddings", workspace / "emb.txt",
            "--dataset", workspace / "train.tsv",
            "--algo", "agglomerative", "--k", "2", "--linkage", "ward",
            "--p-tfidf", "1.5", "--p-chi2", "0.5",
            "--idf", workspace / "idf.tsv")
    assert run_cli(*args, "--out", workspace / "pred.tsv") == 0
    first = (workspace / "pred.tsv").read_bytes()
    header, row = first.decode().split("\n")[:2]
    assert header.split("\t").index("predict_sense_id") == 3
    assert row.split("\t")[3] in ("0", "1")
    assert run_cli(*args, "--out", workspace / "pred2.tsv") == 0
    assert (workspace / "pred2.tsv").read_bytes() == first


def test_cluster_affinity_propagation(workspace):
    run_cli("build-idf", "--corpus", workspace / "corpus.txt",
            "--out", workspace / "idf.tsv")
    code = run_cli("cluster", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--algo", "affinity_propagation", "--damping", "0.5",
                   "--preference", "auto", "--idf", workspace / "idf.tsv",
                   "--out", workspace / "ap.tsv",
                   "--dump-vectors", workspace / "vecs.tsv")
    assert code == 0
    pred = (workspace / "ap.tsv").read_text().splitlines()
    assert all(line.split("\t")[3] != "" for line in pred[1:])
    vecs = (workspace / "vecs.tsv").read_text().splitlines()
    assert len(vecs) == len(pred) - 1
    cid, comps = vecs[0].split("\t")
    assert cid == pred[1].split("\t")[0]
    assert len(comps.split(" ")) == 8


def test_cluster_bad_preference_is_usage_error(workspace):
    assert run_cli("cluster", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--algo", "affinity_propagation", "--preference", "huge",
                   "--p-tfidf", "0", "--p-chi2", "0",
                   "--out", workspace / "x.tsv") == 1
    assert run_cli("cluster", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--algo", "affinity_propagation", "--preference", "-30",
                   "--p-tfidf", "0", "--p-chi2", "0",
                   "--out", workspace / "x.tsv") == 1


def test_cluster_binary_embeddings_equivalent(workspace):
    run_cli("build-idf", "--corpus", workspace / "corpus.txt",
            "--out", workspace / "idf.tsv")
    common = ("--dataset", workspace / "train.tsv", "--k", "2",
              "--p-tfidf", "0", "--p-chi2", "0")
    run_cli("cluster", "--embeddings", workspace / "emb.txt", *common,
            "--out", workspace / "pt.tsv")
    run_cli("cluster", "--embeddings", workspace / "emb.bin",
            "--format", "binary", *common, "--out", workspace / "pb.tsv")
    assert (workspace / "pt.tsv").read_text() == (workspace / "pb.tsv").read_text()


def test_evaluate_reports_ari(workspace, capsys):
    run_cli("build-idf", "--corpus", workspace / "corpus.txt",
            "--out", workspace / "idf.tsv")
    run_cli("cluster", "--embeddings", workspace / "emb.txt",
            "--dataset", workspace / "train.tsv", "--k", "2",
            "--p-tfidf", "1", "--p-chi2", "1", "--idf", workspace / "idf.tsv",
            "--out", workspace / "pred.tsv")
    capsys.readouterr()
    assert run_cli("evaluate", "--gold", workspace / "train.tsv",
                   "--pred", workspace / "pred.tsv",
                   "--confusion-dir", workspace / "conf") == 0
    out = capsys.readouterr().out
    assert out.startswith("word\tn\tari")
    assert "aggregate_weighted" in out and "aggregate_macro" in out
    assert (workspace / "conf" / "alphaword.csv").exists()


def test_ward_cosine_is_usage_error(workspace, capsys):
    code = run_cli("cluster", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--linkage", "ward", "--metric", "cosine",
                   "--out", workspace / "x.tsv")
    assert code == 1
    err = capsys.readouterr().err
    assert "ward" in err and "euclidean" in err


def test_unknown_subcommand_is_usage_error(capsys):
    assert run_cli("frobnicate") == 1
    assert run_cli("cluster", "--no-such-flag") == 1


def test_missing_file_is_data_error(workspace, capsys):
    code = run_cli("cluster", "--embeddings", workspace / "nope.txt",
                   "--dataset", workspace / "train.tsv",
                   "--p-tfidf", "0", "--p-chi2", "0",
                   "--out", workspace / "x.tsv")
    assert code == 2


def test_idf_required_for_positive_tfidf_power(workspace):
    code = run_cli("cluster", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--out", workspace / "x.tsv")
    assert code == 1


def test_help_lists_defaults(capsys):
    assert run_cli("cluster", "--help") == 0
    text = " ".join(capsys.readouterr().out.split())
    for needle in ("default: 2", "default: ward", "default: euclidean",
                   "default: 0.5", "default: auto", "default: 200",
                   "default: 15", "default: agglomerative"):
        assert needle in text
    assert run_cli("norm-report", "--help") == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "default: 1000" in text and "default: 0" in text


def test_norm_report(workspace):
    args = ("norm-report", "--embeddings", workspace / "emb.txt",
            "--freqs", workspace / "freqs.tsv", "--sample-size", "20",
            "--seed", "3")
    assert run_cli(*args, "--out", workspace / "r1.tsv") == 0
    assert run_cli(*args, "--out", workspace / "r2.tsv") == 0
    r1 = (workspace / "r1.tsv").read_bytes()
    assert r1 == (workspace / "r2.tsv").read_bytes()
    assert r1.decode().splitlines()[0] == "word\tfrequency\tnorm"
    assert len(r1.decode().strip().splitlines()) == 21


def test_grid_search_cli(workspace, capsys):
    run_cli("build-idf", "--corpus", workspace / "corpus.txt",
            "--out", workspace / "idf.tsv")
    (workspace / "space.cfg").write_text(
        "power_grid = 0, 1\nk_grid = 1..3\nlinkages = ward, average\n"
        "metrics = euclidean\nalgorithms = agglomerative\n", encoding="utf-8")
    code = run_cli("grid-search", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--idf", workspace / "idf.tsv",
                   "--space", workspace / "space.cfg",
                   "--out-ranked", workspace / "ranked.csv",
                   "--out-heatmap", workspace / "heat.csv",
                   "--out-sweep", workspace / "sweep.csv", "--jobs", "2")
    assert code == 0
    assert capsys.readouterr().out.startswith("best ")
    ranked = (workspace / "ranked.csv").read_text().strip().splitlines()
    assert ranked[0] == "config,train_ari"
    assert len(ranked) - 1 == 4 * 3 * 2
    heat = (workspace / "heat.csv").read_text().strip().splitlines()
    assert heat[0] == "p_tfidf,p_chi2,ari" and len(heat) - 1 == 4
    sweep = (workspace / "sweep.csv").read_text().strip().splitlines()
    assert sweep[0] == "n_clusters,linkage,ari" and len(sweep) - 1 == 6

    # fixed-config heatmap view: k=2 ward is the default clustering config
    code = run_cli("grid-search", "--embeddings", workspace / "emb.txt",
                   "--dataset", workspace / "train.tsv",
                   "--idf", workspace / "idf.tsv",
                   "--space", workspace / "space.cfg",
                   "--out-ranked", workspace / "ranked2.csv",
                   "--out-heatmap", workspace / "heat_fixed.csv",
                   "--heatmap-view", "default")
    assert code == 0
    fixed = (workspace / "heat_fixed.csv").read_text().strip().splitlines()
    assert fixed[0] == "p_tfidf,p_chi2,ari" and len(fixed) - 1 == 4
    maxed = {tuple(line.split(",")[:2]): float(line.split(",")[2])
             for line in heat[1:]}
    for line in fixed[1:]:
        pt, pc, a = line.split(",")
        assert float(a) <= maxed[(pt, pc)] + 1e-9


def test_mt_label_cli(workspace, capsys, tmp_path):
    tr = tmp_path / "tr.tsv"
    ids = [f"c{i:04d}" for i in range(40)]
    lines = [f"{cid}\tbanks\n" if i % 2 else f"{cid}\tjar\n"
             for i, cid in enumerate(ids)]
    tr.write_text("".join(lines), encoding="utf-8")
    assert run_cli("mt-label", "--translations", tr, "--stemmer", "porter",
                   "--out", tmp_path / "labels.tsv") == 0
    text = (tmp_path / "labels.tsv").read_text()
    assert "c0001\tbank" in text and "c0000\tjar" in text

    ds_path = workspace / "train.tsv"
    all_ids = [line.split("\t")[0]
               for line in ds_path.read_text().splitlines()[1:]]
    tr_full = tmp_path / "tr_full.tsv"
    tr_full.write_text("".join(f"{cid}\tjar\n" for cid in all_ids),
                       encoding="utf-8")
    assert run_cli("mt-label", "--translations", tr_full,
                   "--dataset", ds_path, "--out", tmp_path / "pred.tsv") == 0
    assert "\tjar\t" in (tmp_path / "pred.tsv").read_text().splitlines()[1]

    # translations not covering the dataset -> data error
    tr_short = tmp_path / "tr_short.tsv"
    tr_short.write_text("".join(f"{cid}\tjar\n" for cid in all_ids[:3]),
                        encoding="utf-8")
    assert run_cli("mt-label", "--translations", tr_short,
                   "--dataset", ds_path, "--out", tmp_path / "x.tsv") == 2
    # --dataset without --out -> usage error
    assert run_cli("mt-label", "--translations", tr_full,
                   "--dataset", ds_path) == 1


def test_console_entry_point(workspace):
    proc = subprocess.run(
        [sys.executable, "-m", "senseclust.cli", "evaluate",
         "--gold", str(workspace / "train.tsv"),
         "--pred", str(workspace / "missing.tsv")],
        capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "senseclust.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("build-idf", "build-chi2", "cluster", "evaluate",
                "grid-search", "norm-report", "mt-label"):
        assert sub in proc.stdout
