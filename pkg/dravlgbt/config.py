"""
.. module:: config.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Run configuration files ([run], [split], [model] & [train] INI sections).

.. moduleauthor:: dravlgbt developers


"""
import configparser
import dataclasses
import os
import typing

from dravlgbt import constants
from dravlgbt import corpus
from dravlgbt import exceptions
from dravlgbt import io_manager
from dravlgbt import models
from dravlgbt import options
from dravlgbt import trainer



# [model] keys & their types.
_MODEL_KEYS = {
    "filters": int,
    "kernel_width": int,
    "pool": str,
    "hidden_units": int,
    "max_tokens": int,
    "pretrained": str,
    "embedding_dim": int,
    "trainable_embeddings": bool,
    "max_length": int,
    "max_vocab": int,
}

# [train] keys & their types.
_TRAIN_KEYS = {
    "epochs": int,
    "batch_size": int,
    "learning_rate": float,
    "optimizer": str,
    "loss": str,
    "early_stopping": bool,
    "patience": int,
    "class_weights": bool,
    "deterministic": bool,
}


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Validated contents of a run configuration file.

    """
    language: str
    dataset: typing.Optional[str]
    prepared: str
    output: str
    seed: int
    ratios: typing.Tuple[float, float, float]
    stratified: bool
    spec: models.ModelSpec
    train: trainer.TrainConfig
    vectors: typing.Optional[str] = None

    def to_dict(self):
        """Returns a JSON safe view (hashed into manifests).

        """
        return {
            "language": self.language,
            "dataset": self.dataset,
            "prepared": self.prepared,
            "output": self.output,
            "seed": self.seed,
            "ratios": list(self.ratios),
            "stratified": self.stratified,
            "vectors": self.vectors,
            "model": self.spec.to_dict(),
            "train": self.train.to_dict(),
        }


def load_run_config(fpath, seed=None, out=None, language=None):
    """Reads & validates a run configuration file; command-line values win over file values.

    :param str fpath: INI file path.
    :param int seed: --seed override.
    :param str out: --out override (model output directory).
    :param str language: --language override.

    :rtype: RunConfig

    :raises exceptions.InvalidConfiguration: if any value is invalid

    """
    io_manager.assert_file(fpath)
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(fpath, 'r', encoding='utf-8') as fstream:
            parser.read_file(fstream)
    except configparser.Error as err:
        raise exceptions.InvalidConfiguration(fpath, str(err).splitlines()[0])
    base = os.path.dirname(os.path.abspath(fpath))

    return parse_run_config(parser, base, seed=seed, out=out, language=language)


def parse_run_config(parser, base=".", seed=None, out=None, language=None):
    """Builds a RunConfig from a parsed INI document.

    Relative paths are resolved against base.

    """
    run = _section(parser, "run")
    split = _section(parser, "split")
    model = _section(parser, "model")
    train = _section(parser, "train")

    language = corpus.validate_language(language or run.get("language"))
    seed = _get_int("seed", seed if seed is not None else run.get("seed", constants.DEFAULT_SEED))
    ratios = corpus.validate_ratios(
        [i for i in split.get("ratios", ",".join(map(str, constants.DEFAULT_SPLIT_RATIOS))).split(",") if i.strip()])
    stratified = _get_bool("stratified", split.get("stratified", "true"))

    variant = model.get("variant", "").strip().lower()
    if variant not in constants.VARIANTS:
        raise exceptions.InvalidConfiguration("model.variant", "must be one of {}".format(constants.VARIANTS))
    overrides = _get_typed(model, _MODEL_KEYS, "model")
    if "pretrained" in overrides and os.path.exists(_resolve(base, overrides["pretrained"])):
        overrides["pretrained"] = _resolve(base, overrides["pretrained"])
    vectors = _resolve(base, model["vectors"]) if model.get("vectors") else None
    checkpoint = model.get("checkpoint") if variant == constants.VARIANT_TRANSFORMER else None
    if variant == constants.VARIANT_TRANSFORMER and not checkpoint:
        raise exceptions.InvalidConfiguration("model.checkpoint", "required for transformer models")
    if variant != constants.VARIANT_TRANSFORMER:
        overrides["embedding_source"] = vectors or "word2vec"
    try:
        spec = models.make_spec(variant, checkpoint=checkpoint, seed=seed, **overrides)
    except (TypeError, exceptions.InvalidModelSpec) as err:
        raise exceptions.InvalidConfiguration("model", str(err))

    try:
        train_cfg = trainer.default_config(variant, seed=seed, **_get_typed(train, _TRAIN_KEYS, "train"))
    except TypeError as err:
        raise exceptions.InvalidConfiguration("train", str(err))

    if out:
        output = out
    elif run.get("output"):
        output = _resolve(base, run["output"])
    else:
        output = os.path.join(options.IO_DIR, "models", language, spec.key)
    prepared = _resolve(base, run["prepared"]) if run.get("prepared") else \
               os.path.join(options.IO_DIR, "prepared", language)

    return RunConfig(
        language=language,
        dataset=_resolve(base, run["dataset"]) if run.get("dataset") else None,
        prepared=prepared,
        output=output,
        seed=seed,
        ratios=ratios,
        stratified=stratified,
        spec=spec,
        train=train_cfg,
        vectors=vectors,
        )


def _section(parser, name):
    return dict(parser.items(name)) if parser.has_section(name) else {}


def _resolve(base, fpath):
    fpath = os.path.expanduser(fpath)
    return fpath if os.path.isabs(fpath) else os.path.normpath(os.path.join(base, fpath))


def _get_typed(section, keys, prefix):
    """Returns the known keys of a section converted to their types; blank values are skipped.

    """
    unknown = sorted(set(section) - set(keys) - {"variant", "checkpoint", "vectors"})
    if unknown:
        raise exceptions.InvalidConfiguration(prefix, "unknown keys {}".format(unknown))
    result = {}
    for key, kind in keys.items():
        value = section.get(key, "").strip()
        if not value:
            continue
        name = "{}.{}".format(prefix, key)
        if kind is bool:
            result[key] = _get_bool(name, value)
        elif kind is int:
            result[key] = _get_int(name, value)
        elif kind is float:
            try:
                result[key] = float(value)
            except ValueError:
                raise exceptions.InvalidConfiguration(name, "not a number :: {!r}".format(value))
        else:
            result[key] = value

    return result


def _get_int(name, value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise exceptions.InvalidConfiguration(name, "not an integer :: {!r}".format(value))


def _get_bool(name, value):
    if isinstance(value, bool):
        return value
    key = str(value).strip().lower()
    if key in ("1", "true", "yes", "on"):
        return True
    if key in ("0", "false", "no", "off"):
        return False
    raise exceptions.InvalidConfiguration(name, "not a boolean :: {!r}".format(value))
