# -*- coding: utf-8 -*-

"""
.. module:: test_cli.py

   :license: GPL / CeCILL
   :platform: Unix, Windows
   :synopsis: Executes command line (prepare / train / evaluate / predict / report) tests.

.. moduleauthor:: dravlgbt developers

"""
import numpy
import pytest

import dravlgbt
from dravlgbt import cli
from dravlgbt import options
from utils import *



_CNN_RUN = """
[run]
language = malayalam
seed = 5
prepared = {prepared}
output = {output}

[model]
variant = cnn
vectors =
embedding_dim = 8
filters = 8
kernel_width = 3

[train]
epochs = 2
batch_size = 8
"""

_TRANSFORMER_RUN = """
[run]
language = malayalam
prepared = {prepared}
output = {output}

[model]
variant = transformer
checkpoint = mbert
pretrained = {encoder}
max_tokens = 16

[train]
epochs = 1
batch_size = 8
learning_rate = 0.001
"""


def _run(*argv):
    """Invokes the command line & returns the process exit code.

    """
    with pytest.raises(SystemExit) as info:
        cli.main([str(i) for i in argv])

    return info.value.code


def _read_bytes(fpath):
    with open(str(fpath), "rb") as fstream:
        return fstream.read()


def _write_config(dpath, template, **kwargs):
    fpath = dpath / "run.ini"
    fpath.write_text(template.format(**kwargs), encoding="utf-8")

    return str(fpath)


def _read_predictions(fpath):
    rows = [cells for _, cells in dravlgbt.io_manager.read_tsv(str(fpath))]

    return rows[0], rows[1:]


@pytest.fixture(scope="module")
def cnn_artifact(tmp_path_factory):
    """Prepared split & trained CNN artifact shared by the module's tests.

    """
    root = tmp_path_factory.mktemp("cnn")
    dataset = write_records(make_separable_records(60), str(root / "dataset.tsv"))
    prepared = root / "prepared"
    output = root / "model"
    assert _run("prepare", "--dataset", dataset, "--language", "malayalam", "--out", prepared) == 0
    config = _write_config(root, _CNN_RUN, prepared=prepared, output=output)
    assert _run("train", "--config", config) == 0

    return root, prepared, output


def test_prepare(tmp_path, capsys):
    """DRAVLGBT :: cli :: prepare :: cleaned text, split files & distribution summary.

    """
    dataset = write_records(make_separable_records(30), str(tmp_path / "dataset.tsv"), with_id=False)
    out = tmp_path / "prepared"
    assert _run("prepare", "--dataset", dataset, "--language", "malayalam", "--out", out) == 0
    for fname in ("cleaned.tsv", "train.tsv", "validation.tsv", "test.tsv", "split.json", "distribution.json"):
        assert (out / fname).is_file()

    summary = dravlgbt.io_manager.load_json(str(out / constants.FILE_DISTRIBUTION))
    assert summary["total"] == 30
    assert summary["distribution"] == {i: 10 for i in constants.LABELS}
    assert summary["matches_published"] is False
    assert summary["deltas"][constants.LABEL_HOMOPHOBIC] == 10 - 2434

    printed = capsys.readouterr().out
    assert "Class counts differ from the published corpus" in printed
    assert str(10 - 2434) in printed

    split = dravlgbt.corpus.load_split(str(out))
    assert sum(len(records) for _, records in split.parts()) == 30


def test_prepare_class_too_small(tmp_path):
    """DRAVLGBT :: cli :: prepare :: 4 records per class cannot be stratified 80/10/10.

    """
    assert _run("prepare", "--dataset", MALAYALAM_TSV, "--language", "malayalam",
                "--out", tmp_path) == constants.EXIT_VALIDATION_ERROR
    assert not (tmp_path / constants.FILE_SPLIT_META).exists()


def test_prepare_rerun_identical(tmp_path):
    """DRAVLGBT :: cli :: prepare :: same input & seed, byte-identical split files.

    """
    dataset = write_records(make_separable_records(45, constants.LANGUAGE_TAMIL), str(tmp_path / "ta.tsv"))
    for name in ("a", "b"):
        assert _run("prepare", "--dataset", dataset, "--language", "tamil", "--seed", 3,
                    "--out", tmp_path / name) == 0
    for fname in ("train.tsv", "validation.tsv", "test.tsv", "split.json", "cleaned.tsv"):
        assert _read_bytes(tmp_path / "a" / fname) == _read_bytes(tmp_path / "b" / fname)


def test_prepare_default_output(tmp_path, monkeypatch):
    """DRAVLGBT :: cli :: prepare :: output defaults under the IO directory.

    """
    dataset = write_records(make_separable_records(30, constants.LANGUAGE_TAMIL), str(tmp_path / "ta.tsv"))
    monkeypatch.setattr(options, "IO_DIR", str(tmp_path / "io"))
    assert _run("prepare", "--dataset", dataset, "--language", "tamil") == 0
    assert (tmp_path / "io" / "prepared" / "tamil" / constants.FILE_SPLIT_META).is_file()


def test_prepare_published_distribution(tmp_path):
    """DRAVLGBT :: cli :: prepare :: published class counts pass the distribution check.

    """
    dataset = write_published_corpus(str(tmp_path / "ml.tsv"), constants.LANGUAGE_MALAYALAM)
    out = tmp_path / "prepared"
    assert _run("prepare", "--dataset", dataset, "--language", "malayalam",
                "--out", out, "--check-distribution") == 0
    summary = dravlgbt.io_manager.load_json(str(out / constants.FILE_DISTRIBUTION))
    assert summary["total"] == 3114
    assert summary["matches_published"] is True
    assert summary["distribution"] == summary["published"]


def test_prepare_distribution_mismatch(tmp_path):
    """DRAVLGBT :: cli :: prepare :: distribution check fails with exit code 2.

    """
    assert _run("prepare", "--dataset", TAMIL_TSV, "--language", "tamil",
                "--out", tmp_path, "--check-distribution") == constants.EXIT_VALIDATION_ERROR
    assert not (tmp_path / constants.FILE_SPLIT_META).exists()


@pytest.mark.parametrize("dataset", [EMPTY_TSV, UNKNOWN_LABEL_TSV, MALFORMED_TSV, "absent.tsv"])
def test_prepare_invalid_input(tmp_path, dataset):
    """DRAVLGBT :: cli :: prepare :: invalid datasets exit with code 2.

    """
    assert _run("prepare", "--dataset", dataset, "--language", "malayalam",
                "--out", tmp_path) == constants.EXIT_VALIDATION_ERROR


def test_invalid_arguments():
    """DRAVLGBT :: cli :: argument parsing :: unknown command / language.

    """
    assert _run() == 2
    assert _run("prepare", "--language", "kannada") == 2
    assert _run("evaluate", "--model", "x") == 2


def test_train_requires_config():
    """DRAVLGBT :: cli :: train :: --config is required.

    """
    assert _run("train") == constants.EXIT_VALIDATION_ERROR


def test_train_invalid_ratios(tmp_path):
    """DRAVLGBT :: cli :: train :: ratios not summing to one exit with code 2.

    """
    text = _CNN_RUN + "\n[split]\nratios = 0.5, 0.1, 0.1\n"
    config = _write_config(tmp_path, text, prepared=tmp_path, output=tmp_path / "model")
    assert _run("train", "--config", config) == constants.EXIT_VALIDATION_ERROR
    assert not (tmp_path / "model").exists()


def test_train_language_mismatch(cnn_artifact, tmp_path):
    """DRAVLGBT :: cli :: train :: prepared split language must match the run language.

    """
    _, prepared, _ = cnn_artifact
    config = _write_config(tmp_path, _CNN_RUN, prepared=prepared, output=tmp_path / "model")
    assert _run("train", "--config", config, "--language", "tamil") == constants.EXIT_VALIDATION_ERROR


def test_train_artifact(cnn_artifact):
    """DRAVLGBT :: cli :: train :: artifact files & manifest.

    """
    _, prepared, output = cnn_artifact
    for fname in (constants.FILE_SPEC, constants.FILE_WEIGHTS, constants.FILE_LABELS, constants.FILE_VOCAB,
                  constants.FILE_VECTORS, constants.FILE_MANIFEST, constants.FILE_HISTORY):
        assert (output / fname).is_file()

    manifest = dravlgbt.io_manager.load_json(str(output / constants.FILE_MANIFEST))
    assert manifest["language"] == constants.LANGUAGE_MALAYALAM
    assert manifest["model_name"] == "CNN(GloVe)"
    assert manifest["seed"] == 5
    assert manifest["train"]["epochs"] == 2
    assert manifest["train"]["batch_size"] == 8
    assert manifest["train"]["learning_rate"] == constants.DEFAULT_LEARNING_RATE
    assert manifest["config_hash"] == dravlgbt.hashifier.hashify(manifest["config"])
    assert manifest["split_hash"] == dravlgbt.corpus.get_split_hash(str(prepared))
    assert manifest["vectors"]["trained_locally"] is True
    assert manifest["vectors"]["coverage"] == pytest.approx(1.0)
    assert 1 <= manifest["max_length"] <= constants.MAX_LENGTH_CAP
    assert manifest["package"]["name"] == "dravlgbt"
    assert manifest["validation_protocol"] == constants.VALIDATION_PROTOCOL_NOTE


def test_evaluate(cnn_artifact):
    """DRAVLGBT :: cli :: evaluate :: report files are byte-identical across runs.

    """
    root, prepared, output = cnn_artifact
    for name in ("a", "b"):
        assert _run("evaluate", "--model", output, "--split", prepared / "test.tsv",
                    "--out", root / "reports-{}".format(name)) == 0
    fname = "report-malayalam-cnn-test"
    for suffix in (".json", ".txt"):
        assert _read_bytes(root / "reports-a" / (fname + suffix)) == \
               _read_bytes(root / "reports-b" / (fname + suffix))

    record = dravlgbt.io_manager.load_json(str(root / "reports-a" / (fname + ".json")))
    report = dravlgbt.metrics.report_from_dict(record)
    assert report.model == "CNN(GloVe)"
    assert 0.0 <= report.weighted_f1 <= 1.0
    assert sum(i.support for i in report.per_class) == 6
    manifest = dravlgbt.io_manager.load_json(str(output / constants.FILE_MANIFEST))
    assert record["manifest"] == dravlgbt.hashifier.hashify(manifest)
    row = _read_bytes(root / "reports-a" / (fname + ".txt")).decode("utf-8")
    assert row.startswith("CNN(GloVe) | ")
    assert row.strip().endswith(dravlgbt.metrics.format_value(report.weighted_f1))


def test_evaluate_missing_model(tmp_path):
    """DRAVLGBT :: cli :: evaluate :: missing artifact exits with code 2.

    """
    assert _run("evaluate", "--model", tmp_path / "absent", "--split", MALAYALAM_TSV) == \
           constants.EXIT_VALIDATION_ERROR


def test_predict(cnn_artifact, tmp_path):
    """DRAVLGBT :: cli :: predict :: probabilities sum to one & labels follow the argmax.

    """
    _, _, output = cnn_artifact
    out = tmp_path / "predictions.tsv"
    assert _run("predict", "--model", output, "--input", UNLABELLED_TSV, "--out", out) == 0
    header, rows = _read_predictions(out)
    assert tuple(header) == constants.PREDICTION_COLUMNS
    assert [i[0] for i in rows] == ["u-1", "u-2", "u-3", "u-4"]
    for row in rows:
        probabilities = [float(i) for i in row[2:]]
        assert abs(sum(probabilities) - 1.0) <= 1e-6
        assert row[1] == constants.LABELS[int(numpy.argmax(probabilities))]

    sidecar = dravlgbt.io_manager.load_json(str(out) + ".manifest.json")
    assert sidecar["model"] == "CNN(GloVe)"
    assert sidecar["input_hash"] == dravlgbt.hashifier.hashify_file(UNLABELLED_TSV)


def test_predict_default_output(cnn_artifact, tmp_path):
    """DRAVLGBT :: cli :: predict :: output defaults next to the input.

    """
    _, _, output = cnn_artifact
    fpath = tmp_path / "input.tsv"
    fpath.write_bytes(_read_bytes(UNLABELLED_TSV))
    assert _run("predict", "--model", output, "--input", fpath) == 0
    assert (tmp_path / "input.tsv.predictions.tsv").is_file()


def test_predict_empty(cnn_artifact, tmp_path):
    """DRAVLGBT :: cli :: predict :: empty input yields a header-only file.

    """
    _, _, output = cnn_artifact
    fpath = tmp_path / "empty.tsv"
    fpath.write_text("id\tcomment\n", encoding="utf-8")
    out = tmp_path / "predictions.tsv"
    assert _run("predict", "--model", output, "--input", fpath, "--out", out) == 0
    header, rows = _read_predictions(out)
    assert tuple(header) == constants.PREDICTION_COLUMNS
    assert rows == []


def test_report(cnn_artifact, tmp_path, capsys):
    """DRAVLGBT :: cli :: report :: renders a per-language table.

    """
    root, prepared, output = cnn_artifact
    reports = tmp_path / "reports"
    assert _run("evaluate", "--model", output, "--split", prepared / "test.tsv", "--out", reports) == 0
    capsys.readouterr()
    table_path = tmp_path / "table.txt"
    assert _run("report", reports, "--out", table_path) == 0
    printed = capsys.readouterr().out
    table = table_path.read_text(encoding="utf-8")
    assert table in printed
    lines = table.strip().split("\n")
    assert lines[0] == "Malayalam dataset"
    assert lines[2].startswith("CNN(GloVe)")


def test_report_no_inputs(tmp_path):
    """DRAVLGBT :: cli :: report :: no evaluation reports exits with code 2.

    """
    assert _run("report", tmp_path) == constants.EXIT_VALIDATION_ERROR


def test_transformer_pipeline(tmp_path):
    """DRAVLGBT :: cli :: train / evaluate / predict :: fine-tuned local encoder.

    """
    dataset = write_records(make_separable_records(30), str(tmp_path / "dataset.tsv"))
    prepared = tmp_path / "prepared"
    output = tmp_path / "model"
    encoder = write_tiny_encoder(str(tmp_path / "encoder"))
    assert _run("prepare", "--dataset", dataset, "--language", "malayalam", "--out", prepared) == 0
    config = _write_config(tmp_path, _TRANSFORMER_RUN, prepared=prepared, output=output, encoder=encoder)
    assert _run("train", "--config", config) == 0

    manifest = dravlgbt.io_manager.load_json(str(output / constants.FILE_MANIFEST))
    assert manifest["model_name"] == "mBERT"
    assert manifest["vectors"] is None
    assert manifest["train"]["epochs"] == 1

    assert _run("evaluate", "--model", output, "--split", prepared / "test.tsv") == 0
    assert (output / "report-malayalam-mbert-test.json").is_file()

    out = tmp_path / "predictions.tsv"
    assert _run("predict", "--model", output, "--input", UNLABELLED_TSV, "--out", out) == 0
    _, rows = _read_predictions(out)
    assert len(rows) == UNLABELLED_TSV_COUNT
    for row in rows:
        assert abs(sum(float(i) for i in row[2:]) - 1.0) <= 1e-6
