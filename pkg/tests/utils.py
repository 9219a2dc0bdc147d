# -*- coding: utf-8 -*-

"""
.. module:: utils.py

   :license: GPL / CeCILL
   :platform: Unix, Windows
   :synopsis: Unit test utilities.

.. moduleauthor:: dravlgbt developers

"""
import os

import numpy
import torch

import dravlgbt
from dravlgbt import constants
from dravlgbt.corpus import CategoryLabel
from dravlgbt.corpus import CommentRecord



# Test data directory.
TEST_DATA_DIR = os.path.join(os.path.dirname(__file__), "test-data")

# Small labelled Malayalam file (code-mixed, 12 rows, 4 per class).
MALAYALAM_TSV = os.path.join(TEST_DATA_DIR, "malayalam-sample.tsv")
MALAYALAM_TSV_COUNT = 12

# Small labelled Tamil file with an id column.
TAMIL_TSV = os.path.join(TEST_DATA_DIR, "tamil-sample.tsv")
TAMIL_TSV_COUNT = 9

# Unlabelled file (id + comment).
UNLABELLED_TSV = os.path.join(TEST_DATA_DIR, "unlabelled.tsv")
UNLABELLED_TSV_COUNT = 4

# Header only.
EMPTY_TSV = os.path.join(TEST_DATA_DIR, "empty.tsv")

# Malformed: unknown label in row 3.
UNKNOWN_LABEL_TSV = os.path.join(TEST_DATA_DIR, "unknown-label.tsv")

# Malformed: wrong cell count in row 2.
MALFORMED_TSV = os.path.join(TEST_DATA_DIR, "malformed.tsv")

# Word vectors (4-d, with header line).
VECTORS_FILE = os.path.join(TEST_DATA_DIR, "vectors-4d.txt")

# Run configuration fixtures.
CNN_CONFIG_FILE = os.path.join(TEST_DATA_DIR, "cnn.ini")

# Opt-in flag for tests fetching the real mBERT / IndicBERT checkpoints.
TEST_REAL_CHECKPOINTS = os.getenv("DRAVLGBT_TEST_CHECKPOINTS") == "1"

# Words that only occur with one class in the synthetic corpus.
CLASS_WORDS = {
    CategoryLabel.HOMOPHOBIC: ("kappa", "lambda", "sigma", "gamma"),
    CategoryLabel.TRANSPHOBIC: ("theta", "omega", "delta", "zeta"),
    CategoryLabel.NON_ANTI_LGBT: ("rho", "tau", "phi", "chi"),
}

# Words shared by every class.
FILLER_WORDS = ("nalla", "video", "anna", "super", "padam")

# Tiny encoder sizes.
_TINY_ENCODER = dict(
    hidden_size=32,
    num_hidden_layers=2,
    num_attention_heads=2,
    intermediate_size=64,
    max_position_embeddings=128,
    hidden_dropout_prob=0.0,
    attention_probs_dropout_prob=0.0,
)


def make_separable_records(count=30, language=constants.LANGUAGE_MALAYALAM, seed=0):
    """Returns records whose label is given away by class-specific words.

    Labels cycle through the three classes.

    """
    rng = numpy.random.default_rng(seed)
    result = []
    for i in range(count):
        label = CategoryLabel(i % constants.NUM_CLASSES)
        words = list(rng.choice(CLASS_WORDS[label], size=3)) + list(rng.choice(FILLER_WORDS, size=2))
        rng.shuffle(words)
        result.append(CommentRecord("{}-{}".format(language, i + 1), " ".join(words), label, language))

    return result


def write_records(records, fpath, with_id=True, labelled=True):
    """Writes records as a dataset TSV file.

    """
    header = []
    if with_id:
        header.append(constants.COLUMN_ID)
    header.append(constants.COLUMN_COMMENT)
    if labelled:
        header.append(constants.COLUMN_CATEGORY)
    rows = []
    for record in records:
        row = [record.id] if with_id else []
        row.append(record.text)
        if labelled:
            row.append(record.label.text)
        rows.append(row)

    return dravlgbt.io_manager.dump_tsv(header, rows, fpath)


def write_published_corpus(fpath, language, seed=0):
    """Writes a synthetic corpus with exactly the published class counts.

    """
    rng = numpy.random.default_rng(seed)
    records = []
    for label in CategoryLabel:
        for _ in range(constants.PUBLISHED_DISTRIBUTION[language][label.text]):
            words = list(rng.choice(CLASS_WORDS[label] + FILLER_WORDS, size=6))
            records.append(CommentRecord(
                "{}-{}".format(language, len(records) + 1), " ".join(words), label, language))
    order = rng.permutation(len(records))

    return write_records([records[i] for i in order], fpath)


def make_split(records, seed=constants.DEFAULT_SEED):
    """Returns a stratified 80/10/10 split of records.

    """
    return dravlgbt.corpus.split_dataset(records, constants.DEFAULT_SPLIT_RATIOS, seed)


def make_embedding(vocab, dim, seed=0):
    """Returns a random embedding matrix for a vocabulary (PAD row zeros).

    """
    vectors = numpy.random.default_rng(seed).uniform(-0.25, 0.25, (len(vocab), dim)).astype(numpy.float32)
    vectors[constants.PAD_ID] = 0.0

    return dravlgbt.featurize.EmbeddingMatrix(vectors, 0.0)


def make_embedding_model(variant, records, dim=16, seed=constants.DEFAULT_SEED, **overrides):
    """Returns an untrained CNN/LSTM classifier with a vocabulary built from records.

    """
    texts = [text for _, text in dravlgbt.textprep.clean_corpus(records)]
    vocab = dravlgbt.featurize.build_vocabulary(texts)
    spec = dravlgbt.models.make_spec(variant, embedding_dim=dim, seed=seed, **overrides)
    builder = dravlgbt.models.build_cnn if variant == constants.VARIANT_CNN else dravlgbt.models.build_lstm

    return builder(spec, make_embedding(vocab, dim, seed), vocab)


def write_tiny_encoder(dpath, albert=False):
    """Writes a randomly initialised BERT (or ALBERT) encoder & word-piece tokenizer.

    :returns: Directory path.

    """
    from transformers import AlbertConfig
    from transformers import AlbertModel
    from transformers import BertConfig
    from transformers import BertModel
    from transformers import BertTokenizer

    os.makedirs(dpath, exist_ok=True)
    tokens = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    tokens += [chr(i) for i in range(ord("a"), ord("z") + 1)]
    for words in list(CLASS_WORDS.values()) + [FILLER_WORDS]:
        tokens += list(words)
    vocab_file = os.path.join(dpath, "vocab.txt")
    with open(vocab_file, "w", encoding="utf-8") as fstream:
        fstream.write("".join(i + "\n" for i in tokens))
    BertTokenizer(vocab_file).save_pretrained(dpath)

    torch.manual_seed(0)
    if albert:
        config = AlbertConfig(vocab_size=len(tokens), embedding_size=16, **_TINY_ENCODER)
        AlbertModel(config).save_pretrained(dpath)
    else:
        config = BertConfig(vocab_size=len(tokens), **_TINY_ENCODER)
        BertModel(config).save_pretrained(dpath)

    return dpath


def make_transformer_model(dpath, checkpoint=constants.CHECKPOINT_MBERT, max_tokens=16, seed=constants.DEFAULT_SEED):
    """Returns a transformer classifier over a tiny local encoder.

    """
    write_tiny_encoder(dpath, albert=checkpoint == constants.CHECKPOINT_INDICBERT)
    spec = dravlgbt.models.make_spec(
        constants.VARIANT_TRANSFORMER, checkpoint=checkpoint, pretrained=dpath, max_tokens=max_tokens, seed=seed)

    return dravlgbt.models.build_transformer(spec)

