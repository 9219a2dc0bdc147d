"""
.. module:: models.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: The CNN, LSTM & pretrained-encoder classifiers behind one train/predict interface.

.. moduleauthor:: dravlgbt developers


"""
import dataclasses
import json
import os
import typing

import numpy
import torch
import torch.nn.functional as F
from torch import nn
from transformers import AutoConfig
from transformers import AutoModel
from transformers import AutoTokenizer

from dravlgbt import constants
from dravlgbt import exceptions
from dravlgbt import featurize
from dravlgbt import io_manager
from dravlgbt import logger
from dravlgbt import options
from dravlgbt.corpus import CategoryLabel



@dataclasses.dataclass(frozen=True)
class CnnParams:
    """Convolution block sizes.

    """
    filters: int = constants.DEFAULT_CNN_FILTERS
    kernel_width: int = constants.DEFAULT_CNN_KERNEL_WIDTH
    pool: str = constants.CNN_POOL_MAX


@dataclasses.dataclass(frozen=True)
class LstmParams:
    """Recurrent layer sizes.

    """
    hidden_units: int = constants.DEFAULT_LSTM_HIDDEN_UNITS


@dataclasses.dataclass(frozen=True)
class TransformerParams:
    """Pretrained encoder selection.

    `pretrained` overrides the hub identifier the checkpoint alias resolves to
    (another hub id or a local directory).

    """
    checkpoint: str = constants.CHECKPOINT_MBERT
    max_tokens: int = constants.DEFAULT_MAX_TOKENS
    pretrained: typing.Optional[str] = None

    @property
    def location(self):
        return self.pretrained or constants.CHECKPOINTS.get(self.checkpoint, self.checkpoint)


@dataclasses.dataclass(frozen=True)
class ModelSpec:
    """Declarative description of one classifier; exactly one variant block is populated.

    """
    variant: str
    cnn: typing.Optional[CnnParams] = None
    lstm: typing.Optional[LstmParams] = None
    transformer: typing.Optional[TransformerParams] = None
    num_classes: int = constants.NUM_CLASSES
    embedding_dim: int = constants.DEFAULT_EMBEDDING_DIM
    embedding_source: typing.Optional[str] = None
    trainable_embeddings: bool = True
    max_length: typing.Optional[int] = None
    max_vocab: int = constants.DEFAULT_MAX_VOCAB
    seed: int = constants.DEFAULT_SEED

    @property
    def key(self):
        """Short identifier: cnn, lstm, mbert or indicbert.

        """
        if self.variant == constants.VARIANT_TRANSFORMER:
            return self.transformer.checkpoint
        return self.variant

    @property
    def name(self):
        """Report row name.

        """
        return constants.MODEL_NAMES.get(self.key, self.key)

    def validate(self):
        """Raises InvalidModelSpec if an invariant does not hold.

        """
        if self.variant not in constants.VARIANTS:
            raise exceptions.InvalidModelSpec("unknown variant {!r}".format(self.variant))
        populated = [i for i in constants.VARIANTS if getattr(self, i) is not None]
        if populated != [self.variant]:
            raise exceptions.InvalidModelSpec(
                "variant {} requires exactly its own block, found {}".format(self.variant, populated))
        if self.num_classes != constants.NUM_CLASSES:
            raise exceptions.InvalidModelSpec("class count is fixed at {}".format(constants.NUM_CLASSES))
        if self.cnn is not None:
            _assert_positive("filters", self.cnn.filters)
            _assert_positive("kernel_width", self.cnn.kernel_width)
            if self.cnn.pool not in constants.CNN_POOL_MODES:
                raise exceptions.InvalidModelSpec("unknown pool mode {!r}".format(self.cnn.pool))
        if self.lstm is not None:
            _assert_positive("hidden_units", self.lstm.hidden_units)
        if self.transformer is not None:
            if self.transformer.checkpoint not in constants.CHECKPOINTS:
                raise exceptions.InvalidModelSpec(
                    "checkpoint must be one of {}".format(sorted(constants.CHECKPOINTS)))
            if self.transformer.max_tokens < 2:
                raise exceptions.InvalidModelSpec("max_tokens must be >= 2")
        _assert_positive("embedding_dim", self.embedding_dim)
        if self.max_length is not None:
            _assert_positive("max_length", self.max_length)
        if self.max_vocab < 3:
            raise exceptions.InvalidModelSpec("max_vocab must be >= 3")

        return self

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, obj):
        obj = dict(obj)
        for key, klass in (("cnn", CnnParams), ("lstm", LstmParams), ("transformer", TransformerParams)):
            if obj.get(key) is not None:
                obj[key] = klass(**obj[key])

        return cls(**obj).validate()


def _assert_positive(name, value):
    if not isinstance(value, int) or value < 1:
        raise exceptions.InvalidModelSpec("{} must be a positive integer, got {!r}".format(name, value))


def make_spec(variant, checkpoint=None, **overrides):
    """Returns a validated spec with default block parameters.

    :param str variant: cnn | lstm | transformer.
    :param str checkpoint: Checkpoint alias (transformer only).
    :param dict overrides: Block fields (filters, hidden_units, max_tokens ...) and common fields.

    """
    blocks = {
        constants.VARIANT_CNN: ("cnn", CnnParams),
        constants.VARIANT_LSTM: ("lstm", LstmParams),
        constants.VARIANT_TRANSFORMER: ("transformer", TransformerParams),
    }
    if variant not in blocks:
        raise exceptions.InvalidModelSpec("unknown variant {!r}".format(variant))
    key, klass = blocks[variant]
    names = {i.name for i in dataclasses.fields(klass)}
    block_args = {k: v for k, v in overrides.items() if k in names}
    if checkpoint is not None:
        block_args["checkpoint"] = checkpoint
    common = {k: v for k, v in overrides.items() if k not in names}
    common[key] = klass(**block_args)

    return ModelSpec(variant=variant, **common).validate()


@dataclasses.dataclass(frozen=True)
class EncodedTransformerBatch:
    """Token rows framed by classification & separator markers, with masks.

    """
    input_ids: numpy.ndarray
    attention_mask: numpy.ndarray
    token_type_ids: numpy.ndarray
    position_ids: numpy.ndarray
    labels: typing.Optional[typing.Tuple[int, ...]] = None

    def __len__(self):
        return self.input_ids.shape[0]


@dataclasses.dataclass(frozen=True)
class Prediction:
    """Class probabilities (N x 3) & argmax labels.

    """
    probabilities: numpy.ndarray
    labels: typing.Tuple[CategoryLabel, ...]


class CnnNetwork(nn.Module):
    """Embedding -> 1-D convolution (ReLU) -> global pooling -> dense."""

    input_names = ("input_ids",)

    def __init__(self, spec, vectors):
        super(CnnNetwork, self).__init__()
        self.kernel_width = spec.cnn.kernel_width
        self.pool = spec.cnn.pool
        self.embedding = nn.Embedding.from_pretrained(
            torch.as_tensor(vectors, dtype=torch.float32),
            freeze=not spec.trainable_embeddings,
            padding_idx=constants.PAD_ID,
            )
        self.conv = nn.Conv1d(vectors.shape[1], spec.cnn.filters, spec.cnn.kernel_width)
        self.dense = nn.Linear(spec.cnn.filters, spec.num_classes)

    def forward(self, input_ids):
        x = self.embedding(input_ids).transpose(1, 2)
        if x.shape[2] < self.kernel_width:
            x = F.pad(x, (0, self.kernel_width - x.shape[2]))
        x = F.relu(self.conv(x))
        if self.pool == constants.CNN_POOL_MAX:
            x = x.max(dim=2).values
        else:
            x = x.mean(dim=2)

        return self.dense(x)


class LstmNetwork(nn.Module):
    """Embedding -> LSTM (final state) -> ReLU dense projection -> dense.

    The recurrent cell keeps its conventional sigmoid/tanh internals.

    """
    input_names = ("input_ids",)

    def __init__(self, spec, vectors):
        super(LstmNetwork, self).__init__()
        hidden = spec.lstm.hidden_units
        self.embedding = nn.Embedding.from_pretrained(
            torch.as_tensor(vectors, dtype=torch.float32),
            freeze=not spec.trainable_embeddings,
            padding_idx=constants.PAD_ID,
            )
        self.lstm = nn.LSTM(vectors.shape[1], hidden, batch_first=True)
        self.projection = nn.Linear(hidden, hidden)
        self.dense = nn.Linear(hidden, spec.num_classes)

    def forward(self, input_ids):
        # Padding is trailing, so the nonzero count is the sequence length.
        lengths = (input_ids != constants.PAD_ID).sum(dim=1).clamp(min=1)
        packed = nn.utils.rnn.pack_padded_sequence(
            self.embedding(input_ids),
            lengths.cpu(),
            batch_first=True,
            enforce_sorted=False,
            )
        _, (h_n, _) = self.lstm(packed)

        return self.dense(F.relu(self.projection(h_n[-1])))


class TransformerNetwork(nn.Module):
    """Pretrained encoder + single dense head on the classification-marker vector."""

    input_names = ("input_ids", "attention_mask", "token_type_ids", "position_ids")

    def __init__(self, spec, encoder):
        super(TransformerNetwork, self).__init__()
        self.encoder = encoder
        torch.manual_seed(spec.seed)
        self.head = nn.Linear(encoder.config.hidden_size, spec.num_classes)

    def forward(self, input_ids, attention_mask, token_type_ids, position_ids):
        outputs = self.encoder(
            input_ids=input_ids,
            attention_mask=attention_mask,
            token_type_ids=token_type_ids,
            position_ids=position_ids,
            )

        return self.head(outputs.last_hidden_state[:, 0, :])


class Classifier:
    """A network with its spec, fixed label order & featurization state.

    """
    def __init__(self, spec, network, vocab=None, tokenizer=None, max_length=None):
        """Instance constructor.

        """
        self.spec = spec
        self.network = network.to(options.DEVICE)
        self.vocab = vocab
        self.tokenizer = tokenizer
        self.max_length = max_length or spec.max_length
        self.labels = constants.LABELS

    @property
    def input_names(self):
        return self.network.input_names

    @property
    def parameter_count(self):
        return sum(p.numel() for p in self.network.parameters())

    @property
    def layer_count(self):
        """Number of encoder layers (transformer) or None.

        """
        if self.spec.variant != constants.VARIANT_TRANSFORMER:
            return None
        return self.network.encoder.config.num_hidden_layers

    def featurize(self, texts, labels=None):
        """Encodes cleaned texts into the batch type of this model's variant.

        :param list texts: Cleaned texts.
        :param list labels: Optional label ids.

        :returns: PaddedBatch | EncodedTransformerBatch

        """
        if self.spec.variant == constants.VARIANT_TRANSFORMER:
            return encode_for_transformer(texts, self.spec, self.tokenizer, labels)
        if self.vocab is None:
            raise exceptions.ShapeMismatch("classifier has no vocabulary attached")
        seqs = [featurize.encode(i, self.vocab) for i in texts]
        if self.max_length is None:
            self.max_length = featurize.default_max_length(seqs)

        return featurize.pad_batch(seqs, self.max_length, labels)

    def as_tensors(self, batch):
        """Returns the network inputs of a batch as device tensors, in input_names order.

        """
        if isinstance(batch, featurize.PaddedBatch):
            arrays = {"input_ids": batch.ids}
        else:
            arrays = {i: getattr(batch, i) for i in self.input_names}

        return tuple(
            torch.as_tensor(arrays[i], dtype=torch.long).to(options.DEVICE)
            for i in self.input_names
            )

    def save(self, dpath):
        """Persists spec, weights, label order & featurization state to a directory.

        :returns: Directory path.

        """
        if not os.path.isdir(dpath):
            os.makedirs(dpath)
        spec = dataclasses.replace(self.spec, max_length=self.max_length)
        io_manager.write_atomic(os.path.join(dpath, constants.FILE_SPEC),
                                json.dumps(spec.to_dict(), indent=4, sort_keys=True) + "\n")
        io_manager.write_atomic(os.path.join(dpath, constants.FILE_LABELS),
                                "".join(i + "\n" for i in self.labels))
        state = self.network.state_dict()
        io_manager.save_atomic(os.path.join(dpath, constants.FILE_WEIGHTS), lambda tmp: torch.save(state, tmp))
        if self.vocab is not None:
            featurize.save_vocabulary(self.vocab, os.path.join(dpath, constants.FILE_VOCAB))
        if self.tokenizer is not None:
            self.tokenizer.save_pretrained(os.path.join(dpath, constants.DIR_TOKENIZER))
            self.network.encoder.config.save_pretrained(os.path.join(dpath, constants.DIR_ENCODER))
        logger.log("Model saved :: {}".format(dpath), module="models")

        return dpath

    @classmethod
    def load(cls, dpath):
        """Restores a classifier saved by save (no network access required).

        """
        spec = ModelSpec.from_dict(io_manager.load_json(os.path.join(dpath, constants.FILE_SPEC)))
        io_manager.assert_file(os.path.join(dpath, constants.FILE_LABELS))
        with open(os.path.join(dpath, constants.FILE_LABELS), 'r', encoding='utf-8') as fstream:
            labels = tuple(i.strip() for i in fstream if i.strip())
        if labels != constants.LABELS:
            raise exceptions.ShapeMismatch("artifact label order {} differs from {}".format(
                labels, constants.LABELS))

        if spec.variant == constants.VARIANT_TRANSFORMER:
            tokenizer = AutoTokenizer.from_pretrained(os.path.join(dpath, constants.DIR_TOKENIZER))
            encoder = AutoModel.from_config(
                AutoConfig.from_pretrained(os.path.join(dpath, constants.DIR_ENCODER)))
            result = cls(spec, TransformerNetwork(spec, encoder), tokenizer=tokenizer)
        else:
            vocab = featurize.load_vocabulary(os.path.join(dpath, constants.FILE_VOCAB))
            vectors = numpy.zeros((len(vocab), spec.embedding_dim), dtype=numpy.float32)
            klass = CnnNetwork if spec.variant == constants.VARIANT_CNN else LstmNetwork
            result = cls(spec, klass(spec, vectors), vocab=vocab)

        io_manager.assert_file(os.path.join(dpath, constants.FILE_WEIGHTS))
        state = torch.load(os.path.join(dpath, constants.FILE_WEIGHTS),
                           map_location=options.DEVICE, weights_only=True)
        result.network.load_state_dict(state)
        result.network.eval()

        return result


def _assert_variant(spec, variant):
    if spec.variant != variant:
        raise exceptions.SpecMismatch(variant, spec.variant)
    spec.validate()


def build_cnn(spec, emb, vocab=None):
    """Returns an untrained CNN classifier.

    :param ModelSpec spec: CNN spec.
    :param EmbeddingMatrix emb: Initial embedding matrix.
    :param Vocabulary vocab: Vocabulary the matrix rows belong to.

    :rtype: Classifier

    """
    _assert_variant(spec, constants.VARIANT_CNN)
    _assert_embedding(spec, emb, vocab)
    torch.manual_seed(spec.seed)

    return Classifier(spec, CnnNetwork(spec, emb.vectors), vocab=vocab)


def build_lstm(spec, emb, vocab=None):
    """Returns an untrained LSTM classifier.

    :rtype: Classifier

    """
    _assert_variant(spec, constants.VARIANT_LSTM)
    _assert_embedding(spec, emb, vocab)
    torch.manual_seed(spec.seed)

    return Classifier(spec, LstmNetwork(spec, emb.vectors), vocab=vocab)


def _assert_embedding(spec, emb, vocab):
    if emb.dim != spec.embedding_dim:
        raise exceptions.InvalidModelSpec("embedding dimension {} differs from spec {}".format(
            emb.dim, spec.embedding_dim))
    if vocab is not None and len(vocab) != len(emb):
        raise exceptions.ShapeMismatch("embedding rows {} differ from vocabulary size {}".format(
            len(emb), len(vocab)))


def build_transformer(spec):
    """Returns a pretrained encoder with a fresh 3-way head.

    :raises exceptions.CheckpointUnavailable: if weights cannot be fetched or read

    :rtype: Classifier

    """
    _assert_variant(spec, constants.VARIANT_TRANSFORMER)
    tokenizer = load_tokenizer(spec)
    location = spec.transformer.location
    try:
        encoder = AutoModel.from_pretrained(location, cache_dir=options.CHECKPOINT_CACHE)
    except (OSError, ValueError) as err:
        raise exceptions.CheckpointUnavailable(location, err)
    logger.log("Loaded encoder {} :: {} layers".format(
        location, encoder.config.num_hidden_layers), module="models")

    return Classifier(spec, TransformerNetwork(spec, encoder), tokenizer=tokenizer)


def load_tokenizer(spec):
    """Returns the tokenizer paired with a transformer spec's checkpoint.

    """
    location = spec.transformer.location
    try:
        return AutoTokenizer.from_pretrained(location, cache_dir=options.CHECKPOINT_CACHE)
    except (OSError, ValueError) as err:
        raise exceptions.CheckpointUnavailable(location, err)


def encode_for_transformer(texts, spec, tokenizer=None, labels=None):
    """Tokenizes cleaned texts into marker-framed, fixed-length rows.

    Rows start with the classification marker, end with the separator marker
    (kept under truncation) and are padded to spec max tokens.

    :rtype: EncodedTransformerBatch

    """
    _assert_variant(spec, constants.VARIANT_TRANSFORMER)
    tokenizer = tokenizer or load_tokenizer(spec)
    max_tokens = spec.transformer.max_tokens
    texts = list(texts)
    if texts:
        encoded = tokenizer(
            texts,
            padding="max_length",
            truncation=True,
            max_length=max_tokens,
            return_attention_mask=True,
            return_token_type_ids=True,
            return_tensors="np",
            )
        input_ids = encoded["input_ids"].astype(numpy.int64)
        attention_mask = encoded["attention_mask"].astype(numpy.int64)
        token_type_ids = encoded["token_type_ids"].astype(numpy.int64)
    else:
        input_ids = attention_mask = token_type_ids = numpy.zeros((0, max_tokens), dtype=numpy.int64)
    position_ids = numpy.broadcast_to(
        numpy.arange(input_ids.shape[1], dtype=numpy.int64), input_ids.shape).copy()

    return EncodedTransformerBatch(
        input_ids, attention_mask, token_type_ids, position_ids,
        None if labels is None else tuple(int(i) for i in labels)
        )


def argmax_labels(probabilities):
    """Returns the most probable label per row; ties go to the earlier label.

    """
    return tuple(CategoryLabel(int(i)) for i in numpy.argmax(probabilities, axis=1))


def predict(model, batch, batch_size=64):
    """Returns class probabilities & argmax labels for a featurized batch.

    :param Classifier model: Classifier.
    :param batch: PaddedBatch (CNN/LSTM) or EncodedTransformerBatch.
    :param int batch_size: Inference chunk size.

    :raises exceptions.ShapeMismatch: if the batch does not fit the model

    :rtype: Prediction

    """
    _assert_batch(model, batch)
    if len(batch) == 0:
        return Prediction(numpy.zeros((0, constants.NUM_CLASSES)), ())

    model.network.eval()
    tensors = model.as_tensors(batch)
    chunks = []
    with torch.no_grad():
        for start in range(0, len(batch), batch_size):
            logits = model.network(*[i[start:start + batch_size] for i in tensors])
            chunks.append(torch.softmax(logits.double(), dim=1).cpu().numpy())
    probabilities = numpy.concatenate(chunks)

    return Prediction(probabilities, argmax_labels(probabilities))


def _assert_batch(model, batch):
    """Raises ShapeMismatch if a batch does not fit the model.

    """
    if model.spec.variant == constants.VARIANT_TRANSFORMER:
        if not isinstance(batch, EncodedTransformerBatch):
            raise exceptions.ShapeMismatch("transformer models take an EncodedTransformerBatch")
        ids, bound = batch.input_ids, model.network.encoder.config.vocab_size
    else:
        if not isinstance(batch, featurize.PaddedBatch):
            raise exceptions.ShapeMismatch("{} models take a PaddedBatch".format(model.spec.variant))
        ids, bound = batch.ids, model.network.embedding.num_embeddings
    if ids.ndim != 2:
        raise exceptions.ShapeMismatch("expected a 2-d id matrix, got {} dims".format(ids.ndim))
    if ids.size and (ids.min() < 0 or ids.max() >= bound):
        raise exceptions.ShapeMismatch("token ids outside [0, {})".format(bound))
