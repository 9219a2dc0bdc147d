"""
.. module:: trainer.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Optimization loop: Adam, categorical cross-entropy & per-family defaults.

.. moduleauthor:: dravlgbt developers


"""
import copy
import dataclasses
import os
import random
import time
import typing

import numpy
import torch
from sklearn.utils.class_weight import compute_class_weight

from dravlgbt import constants
from dravlgbt import exceptions
from dravlgbt import io_manager
from dravlgbt import logger
from dravlgbt import metrics
from dravlgbt import models
from dravlgbt import options
from dravlgbt import textprep



@dataclasses.dataclass(frozen=True)
class TrainConfig:
    """Optimizer, loss & epoch settings of one run.

    """
    epochs: int
    batch_size: int = constants.DEFAULT_BATCH_SIZE
    learning_rate: float = constants.DEFAULT_LEARNING_RATE
    optimizer: str = constants.OPTIMIZER_ADAM
    loss: str = constants.LOSS_CATEGORICAL_CROSS_ENTROPY
    seed: int = constants.DEFAULT_SEED
    early_stopping: bool = False
    patience: int = constants.DEFAULT_PATIENCE
    class_weights: bool = False
    deterministic: bool = False

    def validate(self):
        """Raises InvalidConfiguration if an invariant does not hold.

        """
        if not isinstance(self.epochs, int) or self.epochs < 1:
            raise exceptions.InvalidConfiguration("epochs", "must be >= 1, got {!r}".format(self.epochs))
        if not isinstance(self.batch_size, int) or self.batch_size < 1:
            raise exceptions.InvalidConfiguration("batch_size", "must be >= 1, got {!r}".format(self.batch_size))
        if not self.learning_rate > 0:
            raise exceptions.InvalidConfiguration("learning_rate", "must be > 0, got {!r}".format(self.learning_rate))
        if self.optimizer != constants.OPTIMIZER_ADAM:
            raise exceptions.InvalidConfiguration("optimizer", "only {} is supported".format(constants.OPTIMIZER_ADAM))
        if self.loss != constants.LOSS_CATEGORICAL_CROSS_ENTROPY:
            raise exceptions.InvalidConfiguration("loss", "only {} is supported".format(
                constants.LOSS_CATEGORICAL_CROSS_ENTROPY))
        if self.patience < 1:
            raise exceptions.InvalidConfiguration("patience", "must be >= 1, got {!r}".format(self.patience))

        return self

    def to_dict(self):
        return dataclasses.asdict(self)


@dataclasses.dataclass
class EpochRecord:
    """Losses, validation weighted F1 & wall-clock seconds of one epoch.

    """
    epoch: int
    train_loss: float
    val_loss: typing.Optional[float]
    val_weighted_f1: typing.Optional[float]
    seconds: float


@dataclasses.dataclass
class TrainHistory:
    """One record per completed epoch.

    """
    epochs: typing.List[EpochRecord] = dataclasses.field(default_factory=list)

    def __len__(self):
        return len(self.epochs)

    @property
    def train_losses(self):
        return [i.train_loss for i in self.epochs]

    def to_rows(self):
        return [dataclasses.asdict(i) for i in self.epochs]


def default_config(variant, **overrides):
    """Returns the published training settings of a model family.

    CNN/LSTM: 100 epochs, Adam (lr 1e-3), batch 32; transformer: 5 epochs, batch 32, lr 3e-5.

    :rtype: TrainConfig

    """
    if variant == constants.VARIANT_TRANSFORMER:
        defaults = dict(
            epochs=constants.DEFAULT_EPOCHS_TRANSFORMER,
            batch_size=constants.DEFAULT_BATCH_SIZE,
            learning_rate=constants.DEFAULT_LEARNING_RATE_TRANSFORMER,
            )
    elif variant in (constants.VARIANT_CNN, constants.VARIANT_LSTM):
        defaults = dict(
            epochs=constants.DEFAULT_EPOCHS_RECURRENT,
            batch_size=constants.DEFAULT_BATCH_SIZE,
            learning_rate=constants.DEFAULT_LEARNING_RATE,
            )
    else:
        raise exceptions.InvalidConfiguration("variant", "unknown value {!r}".format(variant))
    defaults.update(overrides)

    return TrainConfig(**defaults).validate()


def cross_entropy(probs, onehot):
    """Returns mean over rows of -sum(onehot * log(clamp(probs))).

    Probabilities are clamped to [1e-7, 1 - 1e-7].

    :raises exceptions.ShapeMismatch: if shapes differ or are not N x 3

    """
    probs = numpy.asarray(probs, dtype=numpy.float64)
    onehot = numpy.asarray(onehot, dtype=numpy.float64)
    if probs.shape != onehot.shape or probs.ndim != 2 or probs.shape[1] != constants.NUM_CLASSES:
        raise exceptions.ShapeMismatch("probabilities {} vs one-hot {}".format(probs.shape, onehot.shape))
    if probs.shape[0] == 0:
        return 0.0
    clamped = numpy.clip(probs, constants.LOSS_EPSILON, 1.0 - constants.LOSS_EPSILON)

    return float(numpy.mean(-numpy.sum(onehot * numpy.log(clamped), axis=1)))


def _row_losses(logits, targets):
    """Per-row clamped categorical cross-entropy of softmax(logits).

    """
    probs = torch.softmax(logits, dim=1).clamp(constants.LOSS_EPSILON, 1.0 - constants.LOSS_EPSILON)

    return -torch.log(probs.gather(1, targets.unsqueeze(1)).squeeze(1))


def set_seed(seed, deterministic=False):
    """Seeds python, numpy & torch random generators.

    """
    random.seed(seed)
    numpy.random.seed(seed)
    torch.manual_seed(seed)
    if torch.cuda.is_available():
        torch.cuda.manual_seed_all(seed)
    torch.use_deterministic_algorithms(deterministic, warn_only=True)


def _get_class_weights(labels):
    """Returns balanced class weights (classes absent from labels weigh 1).

    """
    weights = numpy.ones(constants.NUM_CLASSES)
    present = numpy.unique(labels)
    weights[present] = compute_class_weight("balanced", classes=present, y=numpy.asarray(labels))

    return torch.as_tensor(weights, dtype=torch.float32).to(options.DEVICE)


def featurize_records(model, records):
    """Cleans & featurizes labelled records for a model.

    """
    texts = [text for _, text in textprep.clean_corpus(records)]

    return model.featurize(texts, [int(i.label) for i in records])


def _evaluate_split(model, batch, cfg):
    """Returns (loss, weighted F1) of a labelled batch.

    """
    prediction = models.predict(model, batch, batch_size=max(cfg.batch_size, 64))
    onehot = numpy.eye(constants.NUM_CLASSES)[list(batch.labels)]
    loss = cross_entropy(prediction.probabilities, onehot)
    report = metrics.per_class(metrics.confusion(batch.labels, prediction.labels))

    return loss, metrics.weighted_f1(report)


def train(model, splits, cfg, out_dir=None):
    """Trains a classifier on the train split, monitoring the validation split.

    :param Classifier model: Classifier built for the run.
    :param DatasetSplit splits: Dataset split.
    :param TrainConfig cfg: Training configuration.
    :param str out_dir: When set, model & history are persisted there.

    :returns: (trained classifier, history)
    :rtype: tuple

    :raises exceptions.DivergenceDetected: if the loss becomes NaN/Inf (last good weights restored)

    """
    cfg.validate()
    set_seed(cfg.seed, cfg.deterministic)
    logger.log("Training {} :: {}".format(model.spec.name, cfg.to_dict()), module="trainer")

    train_batch = featurize_records(model, splits.train)
    val_batch = featurize_records(model, splits.validation) if splits.validation else None
    labels = torch.as_tensor(train_batch.labels, dtype=torch.long).to(options.DEVICE)
    dataset = torch.utils.data.TensorDataset(*model.as_tensors(train_batch), labels)
    loader = torch.utils.data.DataLoader(
        dataset,
        batch_size=cfg.batch_size,
        shuffle=True,
        generator=torch.Generator().manual_seed(cfg.seed),
        )
    class_weights = _get_class_weights(train_batch.labels) if cfg.class_weights else None
    optimizer = torch.optim.Adam(
        [p for p in model.network.parameters() if p.requires_grad], lr=cfg.learning_rate)

    history = TrainHistory()
    last_good = copy.deepcopy(model.network.state_dict())
    best_val_loss, stale_epochs = None, 0
    for epoch in range(1, cfg.epochs + 1):
        started = time.perf_counter()
        model.network.train()
        total_loss, total_rows = 0.0, 0
        for *inputs, targets in loader:
            optimizer.zero_grad()
            losses = _row_losses(model.network(*inputs), targets)
            if class_weights is not None:
                losses = losses * class_weights[targets]
            loss = losses.mean()
            if not torch.isfinite(loss):
                raise _diverged(model, epoch, last_good, out_dir)
            loss.backward()
            optimizer.step()
            total_loss += loss.item() * len(targets)
            total_rows += len(targets)
        train_loss = total_loss / max(total_rows, 1)
        if not numpy.isfinite(train_loss):
            raise _diverged(model, epoch, last_good, out_dir)
        last_good = copy.deepcopy(model.network.state_dict())

        val_loss = val_f1 = None
        if val_batch is not None:
            val_loss, val_f1 = _evaluate_split(model, val_batch, cfg)
        record = EpochRecord(epoch, train_loss, val_loss, val_f1, time.perf_counter() - started)
        history.epochs.append(record)
        logger.log("Epoch {}/{} :: loss={:.4f} val_loss={} val_weighted_f1={} :: {:.1f}s".format(
            epoch, cfg.epochs, train_loss,
            "n/a" if val_loss is None else "{:.4f}".format(val_loss),
            "n/a" if val_f1 is None else "{:.4f}".format(val_f1),
            record.seconds), module="trainer")

        if cfg.early_stopping and val_loss is not None:
            if best_val_loss is None or val_loss < best_val_loss:
                best_val_loss, stale_epochs = val_loss, 0
            else:
                stale_epochs += 1
                if stale_epochs >= cfg.patience:
                    logger.log("Early stopping after epoch {}".format(epoch), module="trainer")
                    break

    model.network.eval()
    if out_dir is not None:
        model.save(out_dir)
        io_manager.dump_jsonl(history.to_rows(), os.path.join(out_dir, constants.FILE_HISTORY))

    return model, history


def _diverged(model, epoch, last_good, out_dir):
    """Restores the last good weights, persists them if possible & returns the error to raise.

    """
    model.network.load_state_dict(last_good)
    model.network.eval()
    checkpoint = model.save(out_dir) if out_dir is not None else None
    logger.log_warning("Loss not finite at epoch {}; weights restored".format(epoch), module="trainer")

    return exceptions.DivergenceDetected(epoch, checkpoint)
