import json
import os

import numpy as np
import pytest

from graphvec.cli import main
from graphvec.synthetic import two_class_dataset, write_tu_dortmund


@pytest.fixture
def formatted_dataset(tmp_path):
    """Small synthetic dataset formatted into gexf + manifest."""
    write_tu_dortmund(two_class_dataset(num_graphs=30, seed=3, name="SYN"),
                      str(tmp_path / "org"))
    code = main(["format", "--input-dir", str(tmp_path / "org" / "SYN"),
                 "--name", "SYN", "--output-dir", str(tmp_path / "data")])
    assert code == 0
    return tmp_path


def test_format_writes_gexf_and_manifest(formatted_dataset):
    data = formatted_dataset / "data"
    assert len(list((data / "SYN").glob("*.gexf"))) == 30
    assert (data / "SYN.Labels").exists()


def test_format_rerun_is_byte_identical(formatted_dataset):
    data = formatted_dataset / "data"
    before = (data / "SYN" / "0.gexf").read_bytes()
    manifest_before = (data / "SYN.Labels").read_bytes()
    code = main(["format", "--input-dir", str(formatted_dataset / "org" / "SYN"),
                 "--name", "SYN", "--output-dir", str(data)])
    assert code == 0
    assert (data / "SYN" / "0.gexf").read_bytes() == before
    assert (data / "SYN.Labels").read_bytes() == manifest_before


def test_format_missing_input_fails_cleanly(tmp_path, capsys):
    code = main(["format", "--input-dir", str(tmp_path / "nope"),
                 "--name", "X", "--output-dir", str(tmp_path / "out")])
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")


def test_decompose_writes_documents_and_vocab(formatted_dataset):
    dataset_dir = str(formatted_dataset / "data" / "SYN")
    code = main(["decompose", "--dataset-dir", dataset_dir,
                 "--method", "wl", "--depth", "2"])
    assert code == 0
    docs = list((formatted_dataset / "data" / "SYN").glob("*.wld2"))
    assert len(docs) == 30
    vocab = json.load(open(os.path.join(dataset_dir, "vocab.wld2.json")))
    tokens_on_disk = set()
    for doc in docs:
        tokens_on_disk.update(doc.read_text().split())
    assert set(vocab) == tokens_on_disk
    assert all(set(entry) == {"id", "count"} for entry in vocab.values())


def test_decompose_invalid_method_is_usage_error(formatted_dataset, capsys):
    code = main(["decompose", "--dataset-dir",
                 str(formatted_dataset / "data" / "SYN"),
                 "--method", "bogus"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_train_writes_embeddings_and_loss(formatted_dataset):
    dataset_dir = str(formatted_dataset / "data" / "SYN")
    main(["decompose", "--dataset-dir", dataset_dir, "--method", "wl",
          "--depth", "1"])
    out = str(formatted_dataset / "out")
    code = main(["train", "--dataset-dir", dataset_dir,
                 "--extension", "wld1", "--model", "pvdbow",
                 "--dim", "8", "--epochs", "5", "--batch-size", "200",
                 "--output-dir", out])
    assert code == 0
    payload = json.load(open(os.path.join(out, "embeddings.json")))
    assert len(payload) == 30
    assert all(len(vec) == 8 for vec in payload.values())
    lines = open(os.path.join(out, "loss.csv")).read().splitlines()
    assert lines[0] == "epoch,mean_loss"
    assert len(lines) == 6


def test_train_missing_extension_lists_directory(formatted_dataset, capsys):
    dataset_dir = str(formatted_dataset / "data" / "SYN")
    code = main(["train", "--dataset-dir", dataset_dir,
                 "--extension", "zzz", "--model", "pvdbow",
                 "--output-dir", str(formatted_dataset / "out")])
    assert code == 1
    err = capsys.readouterr().err
    assert "zzz" in err and "contains" in err


def test_train_same_seed_identical_outputs(formatted_dataset):
    dataset_dir = str(formatted_dataset / "data" / "SYN")
    main(["decompose", "--dataset-dir", dataset_dir, "--method", "sp"])
    outs = []
    for name in ("a", "b"):
        out = str(formatted_dataset / name)
        code = main(["train", "--dataset-dir", dataset_dir,
                     "--extension", "spp", "--model", "pvdm", "--window", "2",
                     "--dim", "4", "--epochs", "3", "--batch-size", "100",
                     "--seed", "11", "--output-dir", out])
        assert code == 0
        outs.append(open(os.path.join(out, "embeddings.json"), "rb").read())
    assert outs[0] == outs[1]


def test_kernel_rbf_diagonal_is_one(formatted_dataset):
    dataset_dir = str(formatted_dataset / "data" / "SYN")
    main(["decompose", "--dataset-dir", dataset_dir, "--method", "wl",
          "--depth", "1"])
    out_csv = str(formatted_dataset / "kernel.csv")
    code = main(["kernel", "--dataset-dir", dataset_dir,
                 "--extension", "wld1", "--type", "rbf",
                 "--output", out_csv])
    assert code == 0
    lines = open(out_csv).read().splitlines()
    ids = lines[0].split(",")
    assert len(ids) == 30
    for i, line in enumerate(lines[1:]):
        row = line.split(",")
        assert float(row[i]) == 1.0


def test_evaluate_report_mean_matches_folds(formatted_dataset, capsys):
    dataset_dir = str(formatted_dataset / "data" / "SYN")
    main(["decompose", "--dataset-dir", dataset_dir, "--method", "wl",
          "--depth", "2"])
    kernel_csv = str(formatted_dataset / "k.csv")
    main(["kernel", "--dataset-dir", dataset_dir, "--extension", "wld2",
          "--type", "rbf", "--output", kernel_csv])
    report_json = str(formatted_dataset / "report.json")
    code = main(["evaluate", "--kernel", kernel_csv,
                 "--labels", str(formatted_dataset / "data" / "SYN.Labels"),
                 "--folds", "5", "--repeats", "2", "--output", report_json])
    assert code == 0
    payload = json.load(open(report_json))
    flat = [a for rep in payload["accuracies"] for a in rep]
    assert payload["mean"] == pytest.approx(np.mean(flat))
    # separable synthetic classes: near-perfect on the kernel route
    assert payload["mean"] == 1.0


def test_evaluate_requires_exactly_one_source(formatted_dataset, capsys):
    code = main(["evaluate", "--labels",
                 str(formatted_dataset / "data" / "SYN.Labels")])
    assert code == 1
    assert "exactly one" in capsys.readouterr().err


def write_pipeline_config(path, gexf_dir, labels):
    path.write_text(f"""
[dataset]
gexf_dir = "{gexf_dir}"
labels = "{labels}"

[decomposition]
method = "wl"
depth = 2

[training]
model = "pvdbow"
dim = 8
epochs = 10
batch_size = 500

[evaluation]
folds = 5
repeats = 2
""")


def test_pipeline_round_trip_hashes_identical(formatted_dataset):
    config = formatted_dataset / "pipe.toml"
    write_pipeline_config(config, str(formatted_dataset / "data" / "SYN"),
                          str(formatted_dataset / "data" / "SYN.Labels"))
    manifests = []
    for name in ("run_a", "run_b"):
        code = main(["pipeline", "--config", str(config),
                     "--output-dir", str(formatted_dataset / name)])
        assert code == 0
        payload = json.load(open(formatted_dataset / name / "run_manifest.json"))
        manifests.append(payload["artifacts"])
    assert manifests[0] == manifests[1]
    run_dir = formatted_dataset / "run_a"
    for artifact in ("resolved_config.toml", "embeddings.json", "loss.csv",
                     "report.json", "report.txt"):
        assert (run_dir / artifact).exists()


def test_pipeline_rejects_unknown_config_key(formatted_dataset, capsys):
    config = formatted_dataset / "pipe.toml"
    write_pipeline_config(config, str(formatted_dataset / "data" / "SYN"),
                          str(formatted_dataset / "data" / "SYN.Labels"))
    code = main(["pipeline", "--config", str(config),
                 "--output-dir", str(formatted_dataset / "x"),
                 "--set", "training.warp_speed=9"])
    assert code == 1
    assert "unknown config key training.warp_speed" in capsys.readouterr().err


def test_internal_error_exits_2(formatted_dataset, capsys, monkeypatch):
    import graphvec.cli as cli

    def boom(args):
        raise RuntimeError("unexpected breakage")

    # build_parser resolves cmd_format from module globals when main() runs
    monkeypatch.setattr(cli, "cmd_format", boom)
    code = main(["format", "--input-dir", str(formatted_dataset / "org" / "SYN"),
                 "--name", "SYN", "--output-dir", str(formatted_dataset / "d2")])
    assert code == 2
    assert capsys.readouterr().err.startswith("error: internal:")


def test_pipeline_threads_reproduce_single_threaded_hashes(formatted_dataset):
    config = formatted_dataset / "pipe_sp.toml"
    config.write_text(f"""
[dataset]
gexf_dir = "{formatted_dataset / 'data' / 'SYN'}"
labels = "{formatted_dataset / 'data' / 'SYN.Labels'}"

[decomposition]
method = "sp"

[kernel]
type = "rbf"

[evaluation]
folds = 5
repeats = 2
""")
    manifests = []
    for name, threads in (("t1", "1"), ("t4", "4")):
        code = main(["pipeline", "--config", str(config),
                     "--output-dir", str(formatted_dataset / name),
                     "--threads", threads])
        assert code == 0
        payload = json.load(open(formatted_dataset / name / "run_manifest.json"))
        manifests.append(payload["artifacts"])
    assert manifests[0] == manifests[1]
