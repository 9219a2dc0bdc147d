"""
.. module:: featurize.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Vocabulary, token sequences, padding & word-vector matrices for the CNN/LSTM path.

.. moduleauthor:: dravlgbt developers


"""
import collections
import dataclasses
import math
import typing

import numpy
from gensim.models import Word2Vec

from dravlgbt import constants
from dravlgbt import exceptions
from dravlgbt import io_manager
from dravlgbt import logger



@dataclasses.dataclass(frozen=True)
class Vocabulary:
    """Token to id mapping; id 0 is PAD and id 1 is OOV.

    """
    token_to_id: typing.Dict[str, int]

    def __len__(self):
        return len(self.token_to_id)

    def __contains__(self, token):
        return token in self.token_to_id

    @property
    def tokens(self):
        """Tokens ordered by id.

        """
        return sorted(self.token_to_id, key=self.token_to_id.get)

    def lookup(self, token):
        """Returns a token's id (OOV id when unknown).

        """
        return self.token_to_id.get(token, constants.OOV_ID)


@dataclasses.dataclass(frozen=True)
class TokenSequence:
    """Encoded comment.

    """
    ids: typing.Tuple[int, ...]

    @property
    def length(self):
        """Original (unpadded) length.

        """
        return len(self.ids)


@dataclasses.dataclass(frozen=True)
class PaddedBatch:
    """N x L matrix of token ids padded with trailing zeros.

    """
    ids: numpy.ndarray
    labels: typing.Optional[typing.Tuple[int, ...]] = None

    @property
    def max_length(self):
        return self.ids.shape[1]

    def __len__(self):
        return self.ids.shape[0]


@dataclasses.dataclass(frozen=True)
class EmbeddingMatrix:
    """V x D word-vector matrix; row 0 (PAD) is zeros.

    """
    vectors: numpy.ndarray
    coverage: float = 0.0

    @property
    def dim(self):
        return self.vectors.shape[1]

    def __len__(self):
        return self.vectors.shape[0]


def tokenize(text):
    """Splits cleaned text on whitespace.

    """
    return text.split()


def build_vocabulary(texts, max_vocab=constants.DEFAULT_MAX_VOCAB):
    """Builds a vocabulary ranked by token frequency then first occurrence.

    :param list texts: Cleaned texts.
    :param int max_vocab: Maximum number of ids, PAD & OOV included.

    :rtype: Vocabulary

    """
    if max_vocab < 3:
        raise exceptions.InvalidConfiguration("max_vocab", "must be >= 3, got {}".format(max_vocab))

    counts = collections.Counter()
    first_seen = {}
    for text in texts:
        for token in tokenize(text):
            counts[token] += 1
            first_seen.setdefault(token, len(first_seen))

    ranked = sorted(counts, key=lambda t: (-counts[t], first_seen[t]))
    token_to_id = {constants.PAD_TOKEN: constants.PAD_ID, constants.OOV_TOKEN: constants.OOV_ID}
    for token in ranked[:max_vocab - len(token_to_id)]:
        token_to_id[token] = len(token_to_id)

    logger.log("Vocabulary built :: {} ids from {} distinct tokens".format(
        len(token_to_id), len(counts)), module="featurize")

    return Vocabulary(token_to_id)


def encode(text, vocab):
    """Encodes cleaned text as token ids; unknown tokens map to OOV.

    :rtype: TokenSequence

    """
    return TokenSequence(tuple(vocab.lookup(i) for i in tokenize(text)))


def pad_batch(seqs, max_length, labels=None):
    """Pads (with trailing zeros) or truncates (keeping the prefix) sequences to a fixed length.

    :param list seqs: Token sequences.
    :param int max_length: Row length L.
    :param list labels: Optional label ids aligned with seqs.

    :rtype: PaddedBatch

    """
    if max_length < 1:
        raise exceptions.InvalidConfiguration("max_length", "must be >= 1, got {}".format(max_length))

    ids = numpy.zeros((len(seqs), max_length), dtype=numpy.int64)
    for row, seq in enumerate(seqs):
        prefix = seq.ids[:max_length]
        ids[row, :len(prefix)] = prefix

    return PaddedBatch(ids, None if labels is None else tuple(int(i) for i in labels))


def default_max_length(seqs):
    """Returns the 95th percentile of sequence lengths, capped, at least 1.

    """
    if not seqs:
        return 1
    value = numpy.percentile([i.length for i in seqs], constants.MAX_LENGTH_PERCENTILE)

    return int(min(constants.MAX_LENGTH_CAP, max(1, math.ceil(value))))


def load_embeddings(fpath, vocab, dim, seed=constants.DEFAULT_SEED):
    """Assembles the embedding matrix of a vocabulary from a textual word-vector file.

    Tokens found in the file take their vector verbatim; the rest take a row
    drawn uniformly from [-0.25, 0.25] under the seed; row 0 is zeros.
    A leading `count dim` header line is tolerated.

    :param str fpath: Word-vector file (token followed by dim reals per line).
    :param Vocabulary vocab: Vocabulary.
    :param int dim: Expected dimension D.
    :param int seed: Seed of the uniform draw.

    :rtype: EmbeddingMatrix

    """
    io_manager.assert_file(fpath)
    rng = numpy.random.default_rng(seed)
    vectors = rng.uniform(-constants.EMBEDDING_INIT_RANGE, constants.EMBEDDING_INIT_RANGE,
                          (len(vocab), dim)).astype(numpy.float32)
    vectors[constants.PAD_ID] = 0.0

    matched = set()
    with open(fpath, 'r', encoding='utf-8') as fstream:
        for line_number, line in enumerate(fstream, 1):
            parts = line.rstrip("\n").rstrip(" ").split(" ")
            if not parts or parts == [""]:
                continue
            if line_number == 1 and _is_header(parts):
                continue
            if len(parts) - 1 != dim:
                raise exceptions.DimensionMismatch(fpath, line_number, dim, len(parts) - 1)
            token = parts[0]
            if token in vocab and vocab.lookup(token) != constants.PAD_ID:
                vectors[vocab.lookup(token)] = numpy.asarray(parts[1:], dtype=numpy.float32)
                matched.add(token)

    real_tokens = len(vocab) - 2
    coverage = len(matched) / real_tokens if real_tokens > 0 else 0.0
    logger.log("Embedding coverage :: {}/{} vocabulary tokens ({:.2%}) found in {}".format(
        len(matched), real_tokens, coverage, fpath), module="featurize")

    return EmbeddingMatrix(vectors, coverage)


def _is_header(parts):
    """Returns flag indicating whether a first line is a `count dim` header.

    """
    return len(parts) == 2 and all(i.isdigit() for i in parts)


def train_word_vectors(texts, fpath, dim=constants.DEFAULT_EMBEDDING_DIM, seed=constants.DEFAULT_SEED):
    """Trains corpus-local word vectors and writes them in textual word-vector format.

    :param list texts: Cleaned training texts.
    :param str fpath: Output path.
    :param int dim: Vector dimension.
    :param int seed: Training seed (single worker for reproducibility).

    :returns: Path to written file.
    :rtype: str

    """
    sentences = [tokenize(i) for i in texts if i]
    if not sentences:
        logger.log_warning("No tokens to train word vectors on :: {}".format(fpath), module="featurize")
        return io_manager.write_atomic(fpath, "0 {}\n".format(dim))

    model = Word2Vec(
        sentences=sentences,
        vector_size=dim,
        window=5,
        min_count=1,
        workers=1,
        seed=seed,
        )
    io_manager.save_atomic(fpath, lambda tmp: model.wv.save_word2vec_format(tmp, binary=False))
    logger.log("Trained {}-d word vectors for {} tokens :: {}".format(
        dim, len(model.wv), fpath), module="featurize")

    return fpath


def save_vocabulary(vocab, fpath):
    """Writes a vocabulary as token<TAB>id lines.

    """
    text = "".join("{}\t{}\n".format(t, vocab.token_to_id[t]) for t in vocab.tokens)

    return io_manager.write_atomic(fpath, text)


def load_vocabulary(fpath):
    """Reads a vocabulary written by save_vocabulary.

    """
    io_manager.assert_file(fpath)
    token_to_id = {}
    with open(fpath, 'r', encoding='utf-8') as fstream:
        for line in fstream:
            token, identifier = line.rstrip("\n").rsplit("\t", 1)
            token_to_id[token] = int(identifier)

    return Vocabulary(token_to_id)
