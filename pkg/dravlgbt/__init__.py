#
#
#      8                    8        .oPYo. .oPYo. ooooo
#      8                    8        8   `8 8    8   8
# .oPYo8 oPYo. .oPYo. o    o 8        8YooP' 8        8
# 8    8 8  `' .oooo8 Y.  .P 8        8   `b 8   oo   8
# 8    8 8     8    8 `b..d' 8        8    8 8    8   8
# `YooP' 8     `YooP8  `YP'  8oooooo  8oooP' `YooP8   8
# :.....:..:::::.....:::...::........:......::....8 ::..:
# ::::::::::::::::::::::::::::::::::::::::::::::::::::::
#
#

"""
.. module:: dravlgbt.__init__.py

   :license: GPL / CeCILL
   :platform: Unix, Windows
   :synopsis: Package initializer.

.. moduleauthor:: dravlgbt developers

"""
__author__ = "dravlgbt developers"
__copyright__ = "Copyright 2026 dravlgbt developers"
__date__ = "2026-10-19"
__license__ = "GPL/CeCILL-2.1"
__title__ = "dravlgbt"
__version__ = "0.1.0.0"



import os

import psutil
import torch
import transformers

from dravlgbt import constants
from dravlgbt import corpus
from dravlgbt import exceptions
from dravlgbt import featurize
from dravlgbt import hashifier
from dravlgbt import io_manager
from dravlgbt import metrics
from dravlgbt import models
from dravlgbt import options
from dravlgbt import textprep
from dravlgbt import trainer
from dravlgbt.config import load_run_config
from dravlgbt.logger import log
from dravlgbt.logger import log_error
from dravlgbt.logger import log_warning




def prepare(dataset, language, out=None, seed=constants.DEFAULT_SEED,
            ratios=constants.DEFAULT_SPLIT_RATIOS, stratified=True, check_distribution=False):
    """Cleans, validates & splits a labelled dataset.

    :param str dataset: Path to a comment/category TSV file.
    :param str language: malayalam | tamil.
    :param str out: Output directory (defaults under the I/O directory).
    :param int seed: Split seed.
    :param tuple ratios: Train/validation/test fractions.
    :param bool stratified: Preserve label proportions per split.
    :param bool check_distribution: Raise if class counts differ from the published counts.

    :returns: Distribution summary (also written to distribution.json).
    :rtype: dict

    """
    language = corpus.validate_language(language)
    records = corpus.load_dataset(dataset, language)
    if not records:
        raise exceptions.EmptyDataset(dataset)
    dataset_hash = hashifier.hashify_file(dataset)

    # Compare with the published counts.
    deltas = corpus.get_distribution_deltas(records, language)
    if check_distribution:
        corpus.validate_distribution(records, language)
    elif any(deltas.values()):
        log_warning("Class counts differ from the published corpus :: {}".format(deltas))

    out = out or os.path.join(options.IO_DIR, "prepared", language)
    textprep.write_cleaned(records, os.path.join(out, constants.FILE_CLEANED))
    split = corpus.split_dataset(records, ratios, seed, stratified)
    corpus.save_split(split, out, dataset_hash)

    summary = {
        "language": language,
        "dataset_hash": dataset_hash,
        "total": len(records),
        "distribution": {k.text: v for k, v in corpus.class_distribution(records).items()},
        "published": constants.PUBLISHED_DISTRIBUTION[language],
        "deltas": deltas,
        "matches_published": not any(deltas.values()),
    }
    io_manager.dump_json(summary, os.path.join(out, constants.FILE_DISTRIBUTION))
    log("Prepared {} :: {} records :: {}".format(language, len(records), out))

    return summary


def train(run_config):
    """Builds & trains the model a run configuration describes.

    :param RunConfig run_config: Validated run configuration.

    :returns: (artifact directory, training history)
    :rtype: tuple

    """
    cfg = run_config
    split = corpus.load_split(cfg.prepared)
    if split.language != cfg.language:
        raise exceptions.InvalidConfiguration("language", "prepared split is {}, config says {}".format(
            split.language, cfg.language))
    if tuple(split.ratios) != tuple(cfg.ratios) or split.stratified != cfg.stratified:
        log_warning("Prepared split ratios {} differ from configured {}".format(split.ratios, cfg.ratios))

    spec = cfg.spec
    if spec.variant == constants.VARIANT_TRANSFORMER:
        model = models.build_transformer(spec)
        vectors = None
    else:
        model, vectors = _build_embedding_model(cfg, split)

    manifest = _get_manifest(cfg, split, model, vectors)
    io_manager.dump_json(manifest, os.path.join(cfg.output, constants.FILE_MANIFEST))
    model, history = trainer.train(model, split, cfg.train, out_dir=cfg.output)
    log("Model trained :: {} :: {}".format(spec.name, cfg.output))

    return cfg.output, history


def _build_embedding_model(cfg, split):
    """Builds vocabulary, word vectors & an untrained CNN/LSTM classifier.

    """
    spec = cfg.spec
    texts = [text for _, text in textprep.clean_corpus(split.train)]
    vocab = featurize.build_vocabulary(texts, spec.max_vocab)
    max_length = spec.max_length or \
                 featurize.default_max_length([featurize.encode(i, vocab) for i in texts])
    vectors_path = cfg.vectors or featurize.train_word_vectors(
        texts, os.path.join(cfg.output, constants.FILE_VECTORS), spec.embedding_dim, cfg.seed)
    emb = featurize.load_embeddings(vectors_path, vocab, spec.embedding_dim, cfg.seed)
    if spec.variant == constants.VARIANT_CNN:
        model = models.build_cnn(spec, emb, vocab)
    else:
        model = models.build_lstm(spec, emb, vocab)
    model.max_length = max_length
    log("Sequence length L = {}".format(max_length))

    return model, {
        "path": vectors_path,
        "hash": hashifier.hashify_file(vectors_path),
        "coverage": emb.coverage,
        "trained_locally": cfg.vectors is None,
    }


def _get_manifest(cfg, split, model, vectors):
    """Returns the run manifest written next to a model artifact.

    """
    split_metadata = io_manager.load_json(os.path.join(cfg.prepared, constants.FILE_SPLIT_META))

    return {
        "package": {"name": __title__, "version": __version__},
        "libraries": {"torch": torch.__version__, "transformers": transformers.__version__},
        "host": {
            "cpu_count": psutil.cpu_count(),
            "memory_bytes": psutil.virtual_memory().total,
            "device": options.DEVICE,
        },
        "language": cfg.language,
        "model_name": model.spec.name,
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "config_hash": hashifier.hashify(cfg.to_dict()),
        "dataset_hash": split_metadata.get("dataset_hash"),
        "split": split_metadata,
        "split_hash": corpus.get_split_hash(cfg.prepared),
        "model": model.spec.to_dict(),
        "max_length": model.max_length,
        "parameter_count": model.parameter_count,
        "train": cfg.train.to_dict(),
        "vectors": vectors,
        "validation_protocol": constants.VALIDATION_PROTOCOL_NOTE,
    }


def _load_artifact(model_dir):
    """Returns (classifier, manifest, manifest hash) of a model artifact.

    """
    manifest = io_manager.load_json(os.path.join(model_dir, constants.FILE_MANIFEST))

    return models.Classifier.load(model_dir), manifest, hashifier.hashify(manifest)


def evaluate(model_dir, split_path, out=None):
    """Evaluates a model artifact on a labelled split file.

    :param str model_dir: Model artifact directory.
    :param str split_path: Labelled TSV (e.g. a prepared test.tsv).
    :param str out: Report directory (defaults to the artifact directory).

    :returns: (report, path to JSON report, path to rendered row)
    :rtype: tuple

    """
    model, manifest, manifest_hash = _load_artifact(model_dir)
    language = manifest["language"]
    records = corpus.load_dataset(split_path, language)
    if not records:
        raise exceptions.EmptyDataset(split_path)

    batch = trainer.featurize_records(model, records)
    prediction = models.predict(model, batch)
    report = metrics.evaluate_labels(
        [i.label for i in records], prediction.labels, model.spec.name, language, manifest_hash)

    row, record = metrics.render_report(report)
    record["split"] = hashifier.hashify_file(split_path)
    out = out or model_dir
    name = "report-{}-{}-{}".format(
        language, model.spec.key, os.path.splitext(os.path.basename(split_path))[0])
    json_path = io_manager.dump_json(record, os.path.join(out, name + ".json"))
    row_path = io_manager.write_atomic(os.path.join(out, name + ".txt"),
                                       "{} | {}\n".format(report.model, row))
    log("Evaluated {} on {} :: weighted F1 = {}".format(
        report.model, split_path, metrics.format_value(report.weighted_f1)))

    return report, json_path, row_path


def predict(model_dir, input_path, out_path):
    """Labels the comments of an unlabelled TSV file.

    :param str model_dir: Model artifact directory.
    :param str input_path: TSV with a comment column (id optional).
    :param str out_path: Output predictions TSV.

    :returns: Path to predictions file.
    :rtype: str

    """
    model, manifest, manifest_hash = _load_artifact(model_dir)
    records = corpus.load_dataset(input_path, manifest["language"], labelled=False)
    texts = [text for _, text in textprep.clean_corpus(records)]
    prediction = models.predict(model, model.featurize(texts))

    rows = [
        [record.id, label.text] + ["{:.8f}".format(p) for p in probabilities]
        for record, label, probabilities in zip(records, prediction.labels, prediction.probabilities)
    ]
    io_manager.dump_tsv(constants.PREDICTION_COLUMNS, rows, out_path)
    io_manager.dump_json({
        "manifest": manifest_hash,
        "input_hash": hashifier.hashify_file(input_path),
        "model": model.spec.name,
    }, out_path + ".manifest.json")
    log("Predicted {} comments :: {}".format(len(rows), out_path))

    return out_path


def report(inputs, out=None):
    """Aggregates JSON evaluation reports into per-language model tables.

    :param str|sequence inputs: Report file(s) and/or directorie(s).
    :param str out: Optional output text file.

    :returns: Rendered table.
    :rtype: str

    """
    reports = [
        metrics.report_from_dict(io_manager.load_json(i))
        for i in io_manager.yield_files(inputs, suffix=".json")
        if os.path.basename(i).startswith("report-")
    ]
    if not reports:
        raise exceptions.InvalidConfiguration("inputs", "no evaluation reports found")
    table = metrics.render_table(reports)
    if out:
        io_manager.write_atomic(out, table)

    return table
