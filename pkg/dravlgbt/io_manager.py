"""
.. module:: io_manager.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Encapsulates package IO operations.

.. moduleauthor:: dravlgbt developers


"""
import collections
import collections.abc
import csv
import json
import os
import tempfile

import numpy

from dravlgbt import exceptions



def encode(obj):
    """Encodes a metadata blob as a JSON safe dictionary.

    :param dict obj: Manifest, report or summary.

    :returns: A JSON safe dictionary with sorted keys.
    :rtype: dict

    """
    def _encode(value):
        """Encodes a value.

        """
        if isinstance(value, dict):
            return encode(value)
        if isinstance(value, (list, tuple)):
            return [_encode(i) for i in value]
        if isinstance(value, numpy.floating):
            return float(value)
        if isinstance(value, numpy.integer):
            return int(value)
        if isinstance(value, numpy.ndarray):
            return value.tolist()
        return value

    result = collections.OrderedDict()
    for k in sorted(obj.keys(), key=str):
        result[str(k)] = _encode(obj[k])

    return result


def yield_files(criteria, suffix=None):
    """Yields files implied by the criteria.

    :param str|sequence criteria: Pointer(s) to file(s) and/or directorie(s). Directories (including
                                  symbolic links) are searched recursively.
    :param str suffix: Optional file name suffix filter (e.g. '.json').

    :returns: Generator yielding files for processing.
    :rtype: generator

    :raises exceptions.MissingFile: if a pointer does not exist

    """
    # Convert to sequence (if necessary).
    if isinstance(criteria, (str, bytes)):
        criteria = [criteria]
    if not isinstance(criteria, collections.abc.Iterable):
        raise exceptions.InvalidConfiguration("inputs", criteria)
    criteria = list(criteria)
    if [i for i in criteria if not isinstance(i, (str, bytes))]:
        raise exceptions.InvalidConfiguration("inputs", criteria)
    for target in criteria:
        if not os.path.exists(target):
            raise exceptions.MissingFile(target)

    # Determine set of absolute file pointers (sorted for stable output).
    found = set()
    for target in criteria:
        if os.path.isfile(target):
            found.add(os.path.abspath(target))
        elif os.path.isdir(target):
            for folder, _, fnames in os.walk(target, followlinks=True):
                for fname in [i for i in fnames if not i.startswith('.')]:
                    found.add(os.path.abspath(os.path.join(folder, fname)))
    for fpath in sorted(found):
        if suffix is None or fpath.endswith(suffix):
            yield fpath


def assert_file(fpath):
    """Raises MissingFile if a path is not an existing file.

    """
    if not os.path.isfile(fpath):
        raise exceptions.MissingFile(fpath)


def write_atomic(fpath, text):
    """Writes text to a file via write-then-rename.

    :param str fpath: Target path.
    :param str text: UTF-8 content.

    :returns: Path to written file.
    :rtype: str

    """
    dpath = os.path.dirname(os.path.abspath(fpath))
    if not os.path.isdir(dpath):
        os.makedirs(dpath)
    fd, tmp = tempfile.mkstemp(dir=dpath, prefix=".tmp-")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as fstream:
            fstream.write(text)
        os.replace(tmp, fpath)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise

    return fpath


def save_atomic(fpath, save):
    """Runs a saver against a temporary sibling path, then renames it over fpath.

    :param str fpath: Target path.
    :param callable save: Writes a complete file to the path it is given.

    :returns: Path to written file.
    :rtype: str

    """
    dpath = os.path.dirname(os.path.abspath(fpath))
    if not os.path.isdir(dpath):
        os.makedirs(dpath)
    fd, tmp = tempfile.mkstemp(dir=dpath, prefix=".tmp-", suffix=os.path.splitext(fpath)[1])
    os.close(fd)
    try:
        save(tmp)
        os.replace(tmp, fpath)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise

    return fpath


def dump_json(obj, fpath):
    """Writes a metadata blob to file system as indented JSON.

    """
    return write_atomic(fpath, json.dumps(encode(obj), indent=4, ensure_ascii=False) + "\n")


def load_json(fpath):
    """Returns a JSON document read from file system.

    """
    assert_file(fpath)
    with open(fpath, 'r', encoding='utf-8') as fstream:
        return json.loads(fstream.read())


def dump_jsonl(rows, fpath):
    """Writes one JSON object per line.

    """
    text = "".join(json.dumps(encode(i), ensure_ascii=False) + "\n" for i in rows)

    return write_atomic(fpath, text)


def read_tsv(fpath):
    """Yields (row number, cells) for each line of a tab separated file.

    Row numbers are 1-based and include the header row.
    A leading UTF-8 byte order mark is dropped.

    """
    assert_file(fpath)
    with open(fpath, 'r', encoding='utf-8-sig', newline='') as fstream:
        reader = csv.reader(fstream, delimiter='\t', quoting=csv.QUOTE_NONE)
        for row_number, cells in enumerate(reader, 1):
            yield row_number, cells


def dump_tsv(header, rows, fpath):
    """Writes a tab separated file with a header row.

    Cell values must not contain tabs or line breaks.

    """
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(_sanitize_cell(i) for i in row))

    return write_atomic(fpath, "\n".join(lines) + "\n")


def _sanitize_cell(value):
    """Returns a cell value safe for tab separated output.

    """
    value = str(value)
    for char in "\t\r\n":
        value = value.replace(char, " ")

    return value
