# -*- coding: utf-8 -*-

"""
.. module:: test_config.py

   :license: GPL / CeCILL
   :platform: Unix, Windows
   :synopsis: Executes run configuration unit tests.

.. moduleauthor:: dravlgbt developers

"""
import pytest

import dravlgbt
from dravlgbt import exceptions
from dravlgbt import options
from utils import *



# Shipped reproduction configs.
_CONFIGS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(TEST_DATA_DIR))), "sh", "configs")

_MINIMAL = """
[run]
language = tamil

[model]
variant = lstm
"""


def _write(tmp_path, text, fname="run.ini"):
    fpath = tmp_path / fname
    fpath.write_text(text, encoding="utf-8")

    return str(fpath)


def test_load_run_config():
    """DRAVLGBT :: config :: load_run_config :: CNN fixture.

    """
    cfg = dravlgbt.load_run_config(CNN_CONFIG_FILE)
    assert cfg.language == constants.LANGUAGE_MALAYALAM
    assert cfg.seed == 7
    assert cfg.ratios == (0.8, 0.1, 0.1)
    assert cfg.stratified is True
    assert cfg.vectors == os.path.abspath(VECTORS_FILE)
    assert cfg.spec.variant == constants.VARIANT_CNN
    assert cfg.spec.embedding_source == cfg.vectors
    assert cfg.spec.embedding_dim == 4
    assert (cfg.spec.cnn.filters, cfg.spec.cnn.kernel_width, cfg.spec.cnn.pool) == (8, 3, "max")
    assert cfg.spec.seed == 7
    assert (cfg.train.epochs, cfg.train.batch_size, cfg.train.learning_rate) == (2, 4, 0.001)
    assert cfg.train.seed == 7


def test_load_run_config_overrides(tmp_path):
    """DRAVLGBT :: config :: load_run_config :: command-line values win.

    """
    out = str(tmp_path / "model")
    cfg = dravlgbt.load_run_config(CNN_CONFIG_FILE, seed=11, out=out, language="TAMIL")
    assert cfg.seed == 11
    assert cfg.spec.seed == 11 and cfg.train.seed == 11
    assert cfg.output == out
    assert cfg.language == constants.LANGUAGE_TAMIL


def test_load_run_config_defaults(tmp_path, monkeypatch):
    """DRAVLGBT :: config :: load_run_config :: defaults & IO directory layout.

    """
    monkeypatch.setattr(options, "IO_DIR", str(tmp_path / "io"))
    cfg = dravlgbt.load_run_config(_write(tmp_path, _MINIMAL))
    assert cfg.seed == constants.DEFAULT_SEED
    assert cfg.ratios == constants.DEFAULT_SPLIT_RATIOS
    assert cfg.spec.embedding_source == "word2vec"
    assert cfg.vectors is None
    assert cfg.spec.lstm.hidden_units == constants.DEFAULT_LSTM_HIDDEN_UNITS
    assert (cfg.train.epochs, cfg.train.batch_size, cfg.train.learning_rate) == (100, 32, 1e-3)
    assert cfg.output == os.path.join(str(tmp_path / "io"), "models", "tamil", "lstm")
    assert cfg.prepared == os.path.join(str(tmp_path / "io"), "prepared", "tamil")


def test_load_run_config_relative_paths(tmp_path):
    """DRAVLGBT :: config :: load_run_config :: paths resolve against the config directory.

    """
    text = _MINIMAL.replace("[run]", "[run]\nprepared = prep\noutput = ../models/x\ndataset = data.tsv")
    (tmp_path / "cfg").mkdir()
    cfg = dravlgbt.load_run_config(_write(tmp_path / "cfg", text))
    assert cfg.prepared == str(tmp_path / "cfg" / "prep")
    assert cfg.output == str(tmp_path / "models" / "x")
    assert cfg.dataset == str(tmp_path / "cfg" / "data.tsv")


@pytest.mark.parametrize("checkpoint, key", [
    (constants.CHECKPOINT_MBERT, "mbert"),
    (constants.CHECKPOINT_INDICBERT, "indicbert"),
    ])
def test_shipped_transformer_configs(checkpoint, key):
    """DRAVLGBT :: config :: shipped configs :: fine-tuning at 5 epochs, batch 32, lr 3e-5.

    """
    for language in constants.LANGUAGES:
        fpath = os.path.join(_CONFIGS_DIR, "{}-{}.ini".format(language, key))
        cfg = dravlgbt.load_run_config(fpath, out="unused")
        assert cfg.language == language
        assert cfg.spec.key == key
        assert cfg.spec.transformer.checkpoint == checkpoint
        assert cfg.spec.transformer.max_tokens == 128
        assert (cfg.train.epochs, cfg.train.batch_size, cfg.train.learning_rate) == (5, 32, 3e-5)


@pytest.mark.parametrize("variant", [constants.VARIANT_CNN, constants.VARIANT_LSTM])
def test_shipped_embedding_configs(variant):
    """DRAVLGBT :: config :: shipped configs :: CNN/LSTM at 100 epochs, batch 32, lr 1e-3.

    """
    for language in constants.LANGUAGES:
        fpath = os.path.join(_CONFIGS_DIR, "{}-{}.ini".format(language, variant))
        cfg = dravlgbt.load_run_config(fpath, out="unused")
        assert cfg.spec.key == variant
        assert cfg.spec.embedding_dim == 100
        assert cfg.spec.embedding_source == "word2vec"
        assert (cfg.train.epochs, cfg.train.batch_size, cfg.train.learning_rate) == (100, 32, 1e-3)


@pytest.mark.parametrize("text", [
    _MINIMAL.replace("variant = lstm", "variant = lstm\ncolour = blue"),
    _MINIMAL.replace("variant = lstm", "variant = svm"),
    _MINIMAL.replace("variant = lstm", ""),
    _MINIMAL.replace("variant = lstm", "variant = transformer"),
    _MINIMAL.replace("variant = lstm", "variant = transformer\ncheckpoint = xlmr"),
    _MINIMAL.replace("language = tamil", "language = kannada"),
    _MINIMAL + "\n[split]\nratios = 0.5, 0.1, 0.1\n",
    _MINIMAL + "\n[split]\nratios = 0.8, 0.2\n",
    _MINIMAL + "\n[split]\nstratified = maybe\n",
    _MINIMAL + "\n[train]\nepochs = many\n",
    _MINIMAL + "\n[train]\nepochs = 0\n",
    _MINIMAL + "\n[train]\nlearning_rate = fast\n",
    _MINIMAL.replace("variant = lstm", "variant = lstm\nhidden_units = 0"),
    _MINIMAL.replace("[run]", "[run]\nseed = x"),
    "[run\nlanguage = tamil",
    ])
def test_invalid_run_config(tmp_path, text):
    """DRAVLGBT :: config :: load_run_config :: invalid values.

    """
    with pytest.raises(exceptions.InvalidConfiguration):
        dravlgbt.load_run_config(_write(tmp_path, text))


def test_missing_run_config(tmp_path):
    """DRAVLGBT :: config :: load_run_config :: missing file.

    """
    with pytest.raises(exceptions.MissingFile):
        dravlgbt.load_run_config(str(tmp_path / "absent.ini"))


def test_run_config_to_dict():
    """DRAVLGBT :: config :: RunConfig.to_dict :: stable hash.

    """
    first = dravlgbt.load_run_config(CNN_CONFIG_FILE, out="x").to_dict()
    second = dravlgbt.load_run_config(CNN_CONFIG_FILE, out="x").to_dict()
    assert dravlgbt.hashifier.hashify(first) == dravlgbt.hashifier.hashify(second)
    assert first["model"]["cnn"]["filters"] == 8
    assert first["train"]["epochs"] == 2
