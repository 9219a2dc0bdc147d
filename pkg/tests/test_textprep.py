# -*- coding: utf-8 -*-

"""
.. module:: test_textprep.py

   :license: GPL / CeCILL
   :platform: Unix, Windows
   :synopsis: Executes text cleaning unit tests.

.. moduleauthor:: dravlgbt developers

"""
import re
import unicodedata

import numpy
import pytest

import dravlgbt
from dravlgbt.textprep import clean_text
from utils import *



# Codepoint pools used to build random strings.
_POOLS = (
    [chr(i) for i in range(0x20, 0x7f)],
    [chr(i) for i in range(0x0d00, 0x0d80)],    # Malayalam
    [chr(i) for i in range(0x0b80, 0x0c00)],    # Tamil
    [chr(i) for i in range(0x2000, 0x2070)],    # general punctuation & spaces
    ["\t", "\n", " ", "　", "a", "a", "a", "!", "1", "൦", "http://", "www.", "https://x.y/z"],
)


def _random_strings(count, seed=0):
    rng = numpy.random.default_rng(seed)
    pool = [c for p in _POOLS for c in p if not unicodedata.category(c[0]) == "Cs"]
    for _ in range(count):
        size = int(rng.integers(0, 40))
        yield "".join(pool[i] for i in rng.integers(0, len(pool), size))


@pytest.mark.parametrize("raw, expected", [
    ("Check https://t.co/xyz now", "Check now"),
    ("see www.example.com/page?id=3 ok", "see ok"),
    ("HTTPS://EXAMPLE.ORG", ""),
    ("Wow!!! so cool...", "Wow so cool"),
    ("sooooo goooood", "soo good"),
    ("1234 abc 5", "abc"),
    ("nalla ൧൨ padam ௧௨", "nalla padam"),
    ("  a \t b\n\nc  ", "a b c"),
    ("പൊളിിി പടം!!", "പൊളിി പടം"),
    ("Mixed CASE kept", "Mixed CASE kept"),
    ("a+b=c <x> ^y| ~z $", "abc x y z"),
    ("", ""),
    ])
def test_clean_text(raw, expected):
    """DRAVLGBT :: textprep :: clean_text :: the five rules.

    """
    assert clean_text(raw) == expected


def test_clean_text_rule_order():
    """DRAVLGBT :: textprep :: clean_text :: URLs go before punctuation is stripped.

    """
    # With punctuation stripped first the URL would survive as plain letters.
    assert clean_text("x https://a.b/c y") == "x y"
    assert "httpsabc" not in clean_text("x https://a.b/c y")


def test_clean_text_idempotent():
    """DRAVLGBT :: textprep :: clean_text :: idempotent on 10,000 random strings.

    """
    for raw in _random_strings(10000):
        once = clean_text(raw)
        assert clean_text(once) == once


def test_clean_text_residuals():
    """DRAVLGBT :: textprep :: clean_text :: no residual digits, URLs, punctuation or long runs.

    """
    for raw in _random_strings(2000, seed=1):
        _assert_clean(clean_text(raw))


def test_clean_corpus(tmp_path):
    """DRAVLGBT :: textprep :: clean_corpus / write_cleaned :: order, ids & residuals.

    """
    records = dravlgbt.corpus.load_dataset(MALAYALAM_TSV, "malayalam")
    cleaned = dravlgbt.textprep.clean_corpus(records)
    assert [i for i, _ in cleaned] == [r.id for r in records]
    for _, text in cleaned:
        _assert_clean(text)
    assert cleaned[0][1] == "Ee padam kollaam"
    assert cleaned[1][1] == "Chettan il pwolii aayirunnu"

    fpath = dravlgbt.textprep.write_cleaned(records, str(tmp_path / "cleaned.tsv"))
    reloaded = dravlgbt.corpus.load_dataset(fpath, "malayalam")
    assert [r.text for r in reloaded] == [t for _, t in cleaned]
    assert [r.label for r in reloaded] == [r.label for r in records]


def _assert_clean(text):
    assert not [c for c in text if unicodedata.category(c) == "Nd"]
    assert not [c for c in text if unicodedata.category(c).startswith("P")]
    assert not re.search(r"https?://|www\.", text, re.IGNORECASE)
    assert not re.search(r"(.)\1{2,}", text, re.DOTALL)
    assert text == text.strip()
    assert "  " not in text
