"""
.. module:: corpus.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Loads, validates & splits labelled comment datasets.

.. moduleauthor:: dravlgbt developers


"""
import dataclasses
import enum
import os
import re
import typing

import numpy

from dravlgbt import constants
from dravlgbt import exceptions
from dravlgbt import hashifier
from dravlgbt import io_manager
from dravlgbt import logger



# Characters ignored when matching label strings.
_LABEL_NOISE = re.compile(r"[\s\-_+]")


class CategoryLabel(enum.IntEnum):
    """Comment category; integer value is the fixed report/tie-break position.

    """
    HOMOPHOBIC = 0
    TRANSPHOBIC = 1
    NON_ANTI_LGBT = 2

    @property
    def text(self):
        """Published category name.

        """
        return constants.LABELS[self.value]

    @classmethod
    def parse(cls, value, row_number=None):
        """Returns label matching a category string (case/hyphen/space insensitive).

        :raises exceptions.UnknownLabel: if value names none of the three classes

        """
        key = _LABEL_NOISE.sub("", str(value)).lower()
        if key in _LABEL_KEYS:
            return _LABEL_KEYS[key]
        raise exceptions.UnknownLabel(value, row_number)


_LABEL_KEYS = {
    "homophobic": CategoryLabel.HOMOPHOBIC,
    "transphobic": CategoryLabel.TRANSPHOBIC,
    "nonantilgbtcontent": CategoryLabel.NON_ANTI_LGBT,
    "nonantilgbt": CategoryLabel.NON_ANTI_LGBT,
}


@dataclasses.dataclass(frozen=True)
class CommentRecord:
    """One comment, labelled or not.

    """
    id: str
    text: str
    label: typing.Optional[CategoryLabel]
    language: str


@dataclasses.dataclass(frozen=True)
class DatasetSplit:
    """Train/validation/test partition of a corpus.

    """
    train: typing.Tuple[CommentRecord, ...]
    validation: typing.Tuple[CommentRecord, ...]
    test: typing.Tuple[CommentRecord, ...]
    language: str
    seed: int
    ratios: typing.Tuple[float, float, float] = constants.DEFAULT_SPLIT_RATIOS
    stratified: bool = True

    def parts(self):
        """Returns (name, records) pairs in split order.

        """
        return (
            (constants.SPLIT_TRAIN, self.train),
            (constants.SPLIT_VALIDATION, self.validation),
            (constants.SPLIT_TEST, self.test),
        )


def validate_language(language):
    """Returns a normalised language tag.

    :raises exceptions.InvalidConfiguration: if the language is unsupported

    """
    tag = str(language or "").strip().lower()
    if tag not in constants.LANGUAGES:
        raise exceptions.InvalidConfiguration("language", "unsupported value {!r}".format(language))

    return tag


def load_dataset(fpath, language, labelled=True):
    """Loads comment records from a UTF-8 tab separated file.

    The header row must name a `comment` column; `category` is required for
    labelled input; an `id` column is optional.

    :param str fpath: Path to dataset file.
    :param str language: Language tag of every record.
    :param bool labelled: If False the category column may be absent or empty.

    :returns: Records in file order.
    :rtype: list

    """
    language = validate_language(language)
    rows = io_manager.read_tsv(fpath)
    try:
        _, header = next(rows)
    except StopIteration:
        raise exceptions.MalformedRow(1, "missing header row")
    header = [i.strip().lower() for i in header]
    if constants.COLUMN_COMMENT not in header:
        raise exceptions.MalformedRow(1, "header lacks a '{}' column".format(constants.COLUMN_COMMENT))
    if labelled and constants.COLUMN_CATEGORY not in header:
        raise exceptions.MalformedRow(1, "header lacks a '{}' column".format(constants.COLUMN_CATEGORY))

    records = []
    seen = set()
    for row_number, cells in rows:
        if not cells or (len(cells) == 1 and not cells[0]):
            continue
        if len(cells) != len(header):
            raise exceptions.MalformedRow(
                row_number, "expected {} cells, found {}".format(len(header), len(cells)))
        row = dict(zip(header, cells))
        record = _get_record(row, row_number, language, labelled)
        if record.id in seen:
            raise exceptions.DuplicateRecord(record.id)
        seen.add(record.id)
        records.append(record)

    logger.log("Loaded {} {} records from {}".format(len(records), language, fpath), module="corpus")

    return records


def _get_record(row, row_number, language, labelled):
    """Returns a record parsed from a data row.

    """
    text = row[constants.COLUMN_COMMENT]
    if not text:
        raise exceptions.MalformedRow(row_number, "empty comment")

    category = row.get(constants.COLUMN_CATEGORY, "").strip()
    if category:
        label = CategoryLabel.parse(category, row_number)
    elif labelled:
        raise exceptions.MalformedRow(row_number, "empty category")
    else:
        label = None

    identifier = row.get(constants.COLUMN_ID, "").strip() or \
                 "{}-{}".format(language, row_number - 1)

    return CommentRecord(identifier, text, label, language)


def class_distribution(records):
    """Returns the number of records per category.

    :param list records: Comment records.

    :returns: Map of CategoryLabel to count (every label present).
    :rtype: dict

    """
    result = {i: 0 for i in CategoryLabel}
    for record in records:
        if record.label is not None:
            result[record.label] += 1

    return result


def validate_distribution(records, language):
    """Compares a corpus' class counts with the published counts.

    :returns: Map of category name to (observed - published).
    :rtype: dict

    :raises exceptions.DistributionMismatch: if any delta is nonzero

    """
    deltas = get_distribution_deltas(records, language)
    if any(deltas.values()):
        raise exceptions.DistributionMismatch(language, deltas)

    return deltas


def get_distribution_deltas(records, language):
    """Returns map of category name to (observed - published) count.

    """
    language = validate_language(language)
    expected = constants.PUBLISHED_DISTRIBUTION[language]
    observed = class_distribution(records)

    return {i.text: observed[i] - expected[i.text] for i in CategoryLabel}


def split_dataset(records, ratios=constants.DEFAULT_SPLIT_RATIOS, seed=constants.DEFAULT_SEED,
                  stratified=True):
    """Splits records into train/validation/test partitions.

    Sizes are allocated by largest remainder, per label when stratified, and
    each split keeps the input order of its records.

    :param list records: Comment records (unique ids).
    :param tuple ratios: Train/validation/test fractions.
    :param int seed: Shuffle seed.
    :param bool stratified: Preserve label proportions per split.

    :returns: A dataset split.
    :rtype: DatasetSplit

    """
    ratios = validate_ratios(ratios)
    records = list(records)
    ids = [i.id for i in records]
    if len(set(ids)) != len(ids):
        raise exceptions.DuplicateRecord(_first_duplicate(ids))
    language = records[0].language if records else constants.LANGUAGE_MALAYALAM

    rng = numpy.random.default_rng(seed)
    assignments = [[], [], []]
    if stratified:
        unlabelled = [r.id for r in records if r.label is None]
        if unlabelled:
            raise exceptions.InvalidConfiguration(
                "stratified", "record {!r} has no category label".format(unlabelled[0]))
        for label in CategoryLabel:
            positions = [i for i, r in enumerate(records) if r.label == label]
            sizes = _allocate(len(positions), ratios, minimum=1)
            if min(sizes) < 1:
                raise exceptions.EmptyClass(label.text, len(positions), len(sizes))
            _assign(rng.permutation(positions), sizes, assignments)
    else:
        _assign(rng.permutation(len(records)), _allocate(len(records), ratios), assignments)

    train, validation, test = [tuple(records[j] for j in sorted(i)) for i in assignments]
    logger.log("Split {} records :: train={} validation={} test={} :: seed={} stratified={}".format(
        len(records), len(train), len(validation), len(test), seed, stratified), module="corpus")

    return DatasetSplit(train, validation, test, language, seed, ratios, stratified)


def validate_ratios(ratios):
    """Returns split ratios as a float triple.

    :raises exceptions.InvalidConfiguration: if ratios are not three positive fractions summing to 1

    """
    try:
        ratios = tuple(float(i) for i in ratios)
    except (TypeError, ValueError):
        raise exceptions.InvalidConfiguration("ratios", "not numeric :: {!r}".format(ratios))
    if len(ratios) != 3:
        raise exceptions.InvalidConfiguration("ratios", "expected three fractions :: {!r}".format(ratios))
    if min(ratios) <= 0:
        raise exceptions.InvalidConfiguration("ratios", "fractions must be positive :: {!r}".format(ratios))
    if abs(sum(ratios) - 1.0) > constants.SPLIT_RATIO_TOLERANCE:
        raise exceptions.InvalidConfiguration("ratios", "fractions must sum to 1 :: {!r}".format(ratios))

    return ratios


def _allocate(total, ratios, minimum=0):
    """Returns integer split sizes summing to total (largest remainder method).

    When minimum is set, short splits are topped up from splits holding at least
    their exact share, so no split drifts more than one item from total * ratio.
    Sizes stay below minimum when no such donor is left.

    """
    exact = [total * r for r in ratios]
    sizes = [int(numpy.floor(i + 1e-9)) for i in exact]
    remainders = [e - s for e, s in zip(exact, sizes)]
    for idx in sorted(range(len(sizes)), key=lambda i: (-remainders[i], i))[:total - sum(sizes)]:
        sizes[idx] += 1

    if minimum and total >= minimum * len(sizes):
        for idx in range(len(sizes)):
            while sizes[idx] < minimum:
                donors = [i for i in range(len(sizes))
                          if sizes[i] > minimum and sizes[i] >= exact[i] - 1e-9]
                if not donors:
                    return sizes
                donor = max(donors, key=lambda i: (sizes[i] - exact[i], -i))
                sizes[donor] -= 1
                sizes[idx] += 1

    return sizes


def _assign(positions, sizes, assignments):
    """Distributes shuffled record positions over the three splits.

    """
    start = 0
    for target, size in zip(assignments, sizes):
        target.extend(int(i) for i in positions[start:start + size])
        start += size


def _first_duplicate(ids):
    """Returns the first identifier seen twice.

    """
    seen = set()
    for i in ids:
        if i in seen:
            return i
        seen.add(i)


def save_split(split, dpath, dataset_hash=None):
    """Writes a split as three TSV files plus split metadata.

    :returns: Path to the metadata file.
    :rtype: str

    """
    header = (constants.COLUMN_ID, constants.COLUMN_COMMENT, constants.COLUMN_CATEGORY)
    for name, records in split.parts():
        io_manager.dump_tsv(header, [(r.id, r.text, r.label.text) for r in records],
                            os.path.join(dpath, "{}.tsv".format(name)))

    return io_manager.dump_json(get_split_metadata(split, dataset_hash),
                                os.path.join(dpath, constants.FILE_SPLIT_META))


def get_split_metadata(split, dataset_hash=None):
    """Returns the metadata block recorded for a split.

    """
    return {
        "language": split.language,
        "seed": split.seed,
        "ratios": list(split.ratios),
        "stratified": split.stratified,
        "dataset_hash": dataset_hash,
        "counts": {
            name: {label.text: count for label, count in class_distribution(records).items()}
            for name, records in split.parts()
        },
    }


def load_split(dpath):
    """Loads a split previously written by save_split.

    :rtype: DatasetSplit

    """
    metadata = io_manager.load_json(os.path.join(dpath, constants.FILE_SPLIT_META))
    language = metadata["language"]
    parts = [
        tuple(load_dataset(os.path.join(dpath, "{}.tsv".format(name)), language))
        for name in constants.SPLITS
    ]

    return DatasetSplit(parts[0], parts[1], parts[2], language, metadata["seed"],
                        tuple(metadata["ratios"]), metadata["stratified"])


def get_split_hash(dpath):
    """Returns a hash over the files of a persisted split.

    """
    fnames = ["{}.tsv".format(i) for i in constants.SPLITS] + [constants.FILE_SPLIT_META]

    return hashifier.hashify([hashifier.hashify_file(os.path.join(dpath, i)) for i in fnames])
