"""
.. module:: textprep.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Comment cleaning pipeline applied before any tokenization.

.. moduleauthor:: dravlgbt developers


"""
import re
import unicodedata

from dravlgbt import constants
from dravlgbt import io_manager



# URLs: scheme or www prefix up to the next whitespace.
_URL = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)

# Runs of the same codepoint longer than two.
_REPEATS = re.compile(r"(.)\1{2,}", re.DOTALL)

# ASCII symbols removed alongside Unicode punctuation.
_EXTRA_SYMBOLS = frozenset("$+<=>^|~")


def remove_urls(text):
    """Removes URL substrings.

    """
    return _URL.sub(" ", text)


def remove_punctuation(text):
    """Removes Unicode punctuation (category P) and the extra ASCII symbols.

    """
    return "".join(
        i for i in text
        if i not in _EXTRA_SYMBOLS and not unicodedata.category(i).startswith("P")
        )


def remove_digits(text):
    """Removes decimal digits of any script (category Nd).

    """
    return "".join(i for i in text if unicodedata.category(i) != "Nd")


def collapse_repeats(text):
    """Shortens every run of one codepoint to at most two.

    """
    return _REPEATS.sub(r"\1\1", text)


def normalize_whitespace(text):
    """Collapses whitespace to single spaces and strips both ends.

    """
    return " ".join(text.split())


def clean_text(raw):
    """Returns a comment cleaned by the five rules, applied in order.

    URL removal, punctuation removal, digit removal, repeated-character
    collapse, whitespace normalization. Idempotent; case is preserved.

    :param str raw: Raw comment.

    :rtype: str

    """
    text = remove_urls(raw or "")
    text = remove_punctuation(text)
    text = remove_digits(text)
    text = collapse_repeats(text)

    return normalize_whitespace(text)


def clean_corpus(records):
    """Returns (id, cleaned text) pairs, order and length preserved.

    Records whose text cleans to nothing are kept with an empty string.

    """
    return [(i.id, clean_text(i.text)) for i in records]


def write_cleaned(records, fpath):
    """Writes cleaned records as TSV (id, comment, category).

    """
    header = (constants.COLUMN_ID, constants.COLUMN_COMMENT, constants.COLUMN_CATEGORY)
    rows = [
        (identifier, text, "" if record.label is None else record.label.text)
        for record, (identifier, text) in zip(records, clean_corpus(records))
    ]

    return io_manager.dump_tsv(header, rows, fpath)
