"""
.. module:: exceptions.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Package exceptions.

.. moduleauthor:: dravlgbt developers


"""
class InputValidationError(Exception):
    """Base class of errors raised when inputs or configuration are invalid.

    """
    pass


class ProcessingError(Exception):
    """Base class of errors raised while training, evaluating or predicting.

    """
    pass


class MissingFile(InputValidationError):
    """Raised if an expected input file does not exist.

    """
    def __init__(self, fpath):
        """Instance constructor.

        """
        self.fpath = fpath
        super(MissingFile, self).__init__("FILE NOT FOUND :: {}".format(fpath))


class MalformedRow(InputValidationError):
    """Raised if a dataset row cannot be parsed.

    """
    def __init__(self, row_number, reason):
        """Instance constructor.

        """
        self.row_number = row_number
        super(MalformedRow, self).__init__(
            "MALFORMED ROW :: row {} :: {}".format(row_number, reason)
            )


class UnknownLabel(InputValidationError):
    """Raised if a category string is outside the three classes.

    """
    def __init__(self, value, row_number=None):
        """Instance constructor.

        """
        self.value = value
        msg = "UNKNOWN LABEL :: {!r}".format(value)
        if row_number is not None:
            msg += " :: row {}".format(row_number)
        super(UnknownLabel, self).__init__(msg)


class DuplicateRecord(InputValidationError):
    """Raised if two records share an identifier.

    """
    def __init__(self, identifier):
        """Instance constructor.

        """
        super(DuplicateRecord, self).__init__(
            "DUPLICATE RECORD IDENTIFIER :: {}".format(identifier)
            )


class EmptyDataset(InputValidationError):
    """Raised if a dataset holds no data rows where some are required.

    """
    def __init__(self, fpath):
        """Instance constructor.

        """
        super(EmptyDataset, self).__init__("DATASET HAS NO DATA ROWS :: {}".format(fpath))


class EmptyClass(InputValidationError):
    """Raised if a label has fewer records than a stratified split requires.

    """
    def __init__(self, label, available, required):
        """Instance constructor.

        """
        self.label = label
        super(EmptyClass, self).__init__(
            "TOO FEW RECORDS FOR STRATIFIED SPLIT :: {} :: available={} required={}".format(
                label, available, required)
            )


class DistributionMismatch(InputValidationError):
    """Raised if a corpus does not reproduce the published class counts.

    """
    def __init__(self, language, deltas):
        """Instance constructor.

        """
        self.deltas = deltas
        details = ", ".join("{}={:+d}".format(k, v) for k, v in deltas.items())
        super(DistributionMismatch, self).__init__(
            "CLASS DISTRIBUTION DIFFERS FROM PUBLISHED COUNTS :: {} :: {}".format(
                language, details)
            )


class InvalidConfiguration(InputValidationError):
    """Raised if a run/train/split configuration value is invalid.

    """
    def __init__(self, key, reason):
        """Instance constructor.

        """
        self.key = key
        super(InvalidConfiguration, self).__init__(
            "INVALID CONFIGURATION :: {} :: {}".format(key, reason)
            )


class InvalidModelSpec(InputValidationError):
    """Raised if a model specification violates its invariants.

    """
    def __init__(self, reason):
        """Instance constructor.

        """
        super(InvalidModelSpec, self).__init__("INVALID MODEL SPEC :: {}".format(reason))


class SpecMismatch(InputValidationError):
    """Raised if a builder is handed a spec of another variant.

    """
    def __init__(self, expected, actual):
        """Instance constructor.

        """
        super(SpecMismatch, self).__init__(
            "MODEL SPEC VARIANT MISMATCH :: expected={} actual={}".format(expected, actual)
            )


class DimensionMismatch(InputValidationError):
    """Raised if a word vector length differs from the expected dimension.

    """
    def __init__(self, fpath, line_number, expected, actual):
        """Instance constructor.

        """
        super(DimensionMismatch, self).__init__(
            "WORD VECTOR DIMENSION MISMATCH :: {} :: line {} :: expected={} actual={}".format(
                fpath, line_number, expected, actual)
            )


class CheckpointUnavailable(ProcessingError):
    """Raised if pretrained encoder weights cannot be loaded.

    """
    def __init__(self, checkpoint, err):
        """Instance constructor.

        """
        super(CheckpointUnavailable, self).__init__(
            "CHECKPOINT UNAVAILABLE :: {} :: {} :: check network access or pre-populate "
            "the cache directory named by DRAVLGBT_CHECKPOINT_CACHE".format(checkpoint, err)
            )


class DivergenceDetected(ProcessingError):
    """Raised if the training loss stops being finite.

    """
    def __init__(self, epoch, checkpoint=None):
        """Instance constructor.

        """
        self.epoch = epoch
        self.checkpoint = checkpoint
        super(DivergenceDetected, self).__init__(
            "TRAINING DIVERGED :: epoch {} :: last good checkpoint = {}".format(
                epoch, checkpoint or "not persisted")
            )


class ShapeMismatch(ProcessingError):
    """Raised if a batch does not fit the model it is fed to.

    """
    def __init__(self, reason):
        """Instance constructor.

        """
        super(ShapeMismatch, self).__init__("SHAPE MISMATCH :: {}".format(reason))


class LengthMismatch(ProcessingError):
    """Raised if gold and predicted label sequences differ in length.

    """
    def __init__(self, golds, preds):
        """Instance constructor.

        """
        super(LengthMismatch, self).__init__(
            "LABEL SEQUENCE LENGTH MISMATCH :: golds={} preds={}".format(golds, preds)
            )


class EmptyEvaluation(ProcessingError):
    """Raised if an evaluation has zero total support.

    """
    def __init__(self):
        """Instance constructor.

        """
        super(EmptyEvaluation, self).__init__("EVALUATION HAS ZERO SUPPORT")
