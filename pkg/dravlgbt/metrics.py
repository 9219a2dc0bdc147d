"""
.. module:: metrics.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Per-class precision/recall/F1, weighted F1 & table rendering.

.. moduleauthor:: dravlgbt developers


"""
import dataclasses
import decimal
import typing

import numpy
from sklearn.metrics import confusion_matrix

from dravlgbt import constants
from dravlgbt import exceptions
from dravlgbt.corpus import CategoryLabel



@dataclasses.dataclass(frozen=True)
class ConfusionMatrix:
    """3 x 3 counts; rows = gold, columns = predicted, fixed label order.

    """
    counts: numpy.ndarray

    @property
    def total(self):
        return int(self.counts.sum())


@dataclasses.dataclass(frozen=True)
class ClassMetrics:
    """Precision, recall, F1 & support of one class.

    """
    precision: float
    recall: float
    f1: float
    support: int


@dataclasses.dataclass(frozen=True)
class EvaluationReport:
    """One table row: per-class metrics plus weighted F1.

    """
    per_class: typing.Tuple[ClassMetrics, ClassMetrics, ClassMetrics]
    weighted_f1: float
    model: str
    language: str
    manifest: typing.Optional[str] = None
    macro_f1: typing.Optional[float] = None
    accuracy: typing.Optional[float] = None


def confusion(golds, preds):
    """Returns the confusion matrix of gold vs predicted labels.

    :raises exceptions.LengthMismatch: if sequences differ in length

    :rtype: ConfusionMatrix

    """
    golds = [int(CategoryLabel(i)) for i in golds]
    preds = [int(CategoryLabel(i)) for i in preds]
    if len(golds) != len(preds):
        raise exceptions.LengthMismatch(len(golds), len(preds))
    if not golds:
        return ConfusionMatrix(numpy.zeros((constants.NUM_CLASSES, constants.NUM_CLASSES), dtype=int))

    return ConfusionMatrix(confusion_matrix(golds, preds, labels=list(range(constants.NUM_CLASSES))))


def _ratio(numerator, denominator):
    return float(numerator) / float(denominator) if denominator else 0.0


def _f1(precision, recall):
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def per_class(cm):
    """Returns precision/recall/F1/support per class from a confusion matrix.

    Zero denominators yield 0.

    :rtype: tuple

    """
    counts = cm.counts
    result = []
    for c in range(constants.NUM_CLASSES):
        precision = _ratio(counts[c, c], counts[:, c].sum())
        recall = _ratio(counts[c, c], counts[c, :].sum())
        result.append(ClassMetrics(precision, recall, _f1(precision, recall), int(counts[c, :].sum())))

    return tuple(result)


def weighted_f1(metrics):
    """Returns the support-weighted mean of class F1 scores.

    :raises exceptions.EmptyEvaluation: if total support is zero

    """
    total = sum(i.support for i in metrics)
    if total == 0:
        raise exceptions.EmptyEvaluation()

    return sum(i.support / total * i.f1 for i in metrics)


def macro_f1(metrics):
    """Returns the unweighted mean of class F1 scores.

    """
    return sum(i.f1 for i in metrics) / len(metrics)


def accuracy(cm):
    """Returns the fraction of records on the diagonal (0 when empty).

    """
    return _ratio(numpy.trace(cm.counts), cm.total)


def evaluate_labels(golds, preds, model, language, manifest=None):
    """Returns the evaluation report of a gold/predicted label pair list.

    :rtype: EvaluationReport

    """
    cm = confusion(golds, preds)
    metrics = per_class(cm)

    return EvaluationReport(
        per_class=metrics,
        weighted_f1=weighted_f1(metrics),
        model=model,
        language=language,
        manifest=manifest,
        macro_f1=macro_f1(metrics),
        accuracy=accuracy(cm),
        )


def format_value(value):
    """Formats a metric at 2 decimals, rounding half up.

    """
    rounded = decimal.Decimal(str(value)).quantize(decimal.Decimal("0.01"), rounding=decimal.ROUND_HALF_UP)

    return "{:.2f}".format(rounded)


def render_row(report):
    """Returns per-class P R F1 groups then weighted F1, e.g. `0.79 0.49 0.59 | ... | 0.86`.

    """
    groups = [
        " ".join(format_value(v) for v in (i.precision, i.recall, i.f1))
        for i in report.per_class
    ]

    return " | ".join(groups + [format_value(report.weighted_f1)])


def report_to_dict(report):
    """Returns the machine-readable record of a report.

    """
    return {
        "model": report.model,
        "language": report.language,
        "per_class": {
            label: {"p": m.precision, "r": m.recall, "f1": m.f1, "support": m.support}
            for label, m in zip(constants.LABELS, report.per_class)
        },
        "weighted_f1": report.weighted_f1,
        "macro_f1": report.macro_f1,
        "accuracy": report.accuracy,
        "manifest": report.manifest,
    }


def report_from_dict(obj):
    """Returns a report restored from its machine-readable record.

    """
    per_class = tuple(
        ClassMetrics(obj["per_class"][i]["p"], obj["per_class"][i]["r"],
                     obj["per_class"][i]["f1"], obj["per_class"][i]["support"])
        for i in constants.LABELS
    )

    return EvaluationReport(
        per_class=per_class,
        weighted_f1=obj["weighted_f1"],
        model=obj["model"],
        language=obj["language"],
        manifest=obj.get("manifest"),
        macro_f1=obj.get("macro_f1"),
        accuracy=obj.get("accuracy"),
        )


def render_report(report):
    """Returns (formatted table row, machine-readable record).

    """
    return render_row(report), report_to_dict(report)


def render_table(reports):
    """Renders reports as per-language tables, one row per model.

    Rows follow the CNN, LSTM, mBERT, IndicBERT order; unknown models sort last by name.

    """
    def _order(report):
        if report.model in constants.MODEL_ORDER:
            return (constants.MODEL_ORDER.index(report.model), report.model)
        return (len(constants.MODEL_ORDER), report.model)

    width = max([len(i.model) for i in reports] + [len("Model")])
    header = "{} | {} | Weighted F1".format(
        "Model".ljust(width),
        " | ".join("{} (P R F1)".format(i) for i in constants.LABELS)
        )
    blocks = []
    for language in sorted({i.language for i in reports}):
        lines = ["{} dataset".format(language.capitalize()), header]
        for report in sorted([i for i in reports if i.language == language], key=_order):
            lines.append("{} | {}".format(report.model.ljust(width), render_row(report)))
        blocks.append("\n".join(lines))

    return "\n\n".join(blocks) + "\n"
