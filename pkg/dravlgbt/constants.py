"""
.. module:: constants.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Package constants.

.. moduleauthor:: dravlgbt developers


"""
import os



# Environment variable: I/O directory.
ENV_VAR_IO_DIR = "DRAVLGBT_IO_DIR"

# Environment variable: transformer checkpoint cache directory.
ENV_VAR_CHECKPOINT_CACHE = "DRAVLGBT_CHECKPOINT_CACHE"

# Environment variable: torch device.
ENV_VAR_DEVICE = "DRAVLGBT_DEVICE"

# Environment variable: minimum log level.
ENV_VAR_LOG_LEVEL = "DRAVLGBT_LOG_LEVEL"

# Default I/O directory.
DEFAULT_IO_DIR = "{}/.dravlgbt".format(os.getenv("HOME") or ".")

# Label: homophobic.
LABEL_HOMOPHOBIC = "Homophobic"

# Label: transphobic.
LABEL_TRANSPHOBIC = "Transphobic"

# Label: neither of the above.
LABEL_NON_ANTI_LGBT = "Non-anti-LGBT+content"

# Fixed label order (report rows/columns, argmax tie-breaking).
LABELS = (
    LABEL_HOMOPHOBIC,
    LABEL_TRANSPHOBIC,
    LABEL_NON_ANTI_LGBT,
)

# Number of classes.
NUM_CLASSES = len(LABELS)

# Language: Malayalam.
LANGUAGE_MALAYALAM = "malayalam"

# Language: Tamil.
LANGUAGE_TAMIL = "tamil"

# Set of supported languages.
LANGUAGES = (
    LANGUAGE_MALAYALAM,
    LANGUAGE_TAMIL,
)

# Published per-class corpus counts.
PUBLISHED_DISTRIBUTION = {
    LANGUAGE_MALAYALAM: {
        LABEL_HOMOPHOBIC: 2434,
        LABEL_TRANSPHOBIC: 491,
        LABEL_NON_ANTI_LGBT: 189,
    },
    LANGUAGE_TAMIL: {
        LABEL_HOMOPHOBIC: 2022,
        LABEL_TRANSPHOBIC: 485,
        LABEL_NON_ANTI_LGBT: 155,
    },
}

# Dataset TSV column: record identifier (optional).
COLUMN_ID = "id"

# Dataset TSV column: comment text.
COLUMN_COMMENT = "comment"

# Dataset TSV column: category.
COLUMN_CATEGORY = "category"

# Split names.
SPLIT_TRAIN = "train"
SPLIT_VALIDATION = "validation"
SPLIT_TEST = "test"
SPLITS = (SPLIT_TRAIN, SPLIT_VALIDATION, SPLIT_TEST)

# Default split ratios.
DEFAULT_SPLIT_RATIOS = (0.8, 0.1, 0.1)

# Default seed.
DEFAULT_SEED = 42

# Tolerance applied when checking split ratios sum to one.
SPLIT_RATIO_TOLERANCE = 1e-9

# Model variant: convolutional network.
VARIANT_CNN = "cnn"

# Model variant: recurrent network.
VARIANT_LSTM = "lstm"

# Model variant: pretrained encoder fine-tuning.
VARIANT_TRANSFORMER = "transformer"

# Set of supported model variants.
VARIANTS = (
    VARIANT_CNN,
    VARIANT_LSTM,
    VARIANT_TRANSFORMER,
)

# Checkpoint alias: multilingual cased BERT-base.
CHECKPOINT_MBERT = "mbert"

# Checkpoint alias: IndicBERT.
CHECKPOINT_INDICBERT = "indicbert"

# Checkpoint aliases mapped to hub identifiers.
CHECKPOINTS = {
    CHECKPOINT_MBERT: "bert-base-multilingual-cased",
    CHECKPOINT_INDICBERT: "ai4bharat/indic-bert",
}

# Model display names (report rows).
MODEL_NAMES = {
    VARIANT_CNN: "CNN(GloVe)",
    VARIANT_LSTM: "LSTM(GloVe)",
    CHECKPOINT_MBERT: "mBERT",
    CHECKPOINT_INDICBERT: "IndicBERT",
}

# Report row order.
MODEL_ORDER = ("CNN(GloVe)", "LSTM(GloVe)", "mBERT", "IndicBERT")

# Vocabulary: reserved tokens & ids.
PAD_TOKEN = "<pad>"
PAD_ID = 0
OOV_TOKEN = "<oov>"
OOV_ID = 1

# Sequence length: percentile & cap.
MAX_LENGTH_PERCENTILE = 95
MAX_LENGTH_CAP = 128

# Default vocabulary size.
DEFAULT_MAX_VOCAB = 50000

# Default word vector dimension.
DEFAULT_EMBEDDING_DIM = 100

# Range of the uniform draw for tokens missing from the vectors file.
EMBEDDING_INIT_RANGE = 0.25

# CNN defaults.
DEFAULT_CNN_FILTERS = 128
DEFAULT_CNN_KERNEL_WIDTH = 5
CNN_POOL_MAX = "max"
CNN_POOL_MEAN = "mean"
CNN_POOL_MODES = (CNN_POOL_MAX, CNN_POOL_MEAN)

# LSTM defaults.
DEFAULT_LSTM_HIDDEN_UNITS = 128

# Transformer defaults.
DEFAULT_MAX_TOKENS = 128

# Training defaults: CNN/LSTM.
DEFAULT_EPOCHS_RECURRENT = 100
DEFAULT_BATCH_SIZE = 32
DEFAULT_LEARNING_RATE = 1e-3

# Training defaults: transformer fine-tuning.
DEFAULT_EPOCHS_TRANSFORMER = 5
DEFAULT_LEARNING_RATE_TRANSFORMER = 3e-5

# Default early stopping patience (epochs).
DEFAULT_PATIENCE = 3

# Optimizer / loss identifiers.
OPTIMIZER_ADAM = "adam"
LOSS_CATEGORICAL_CROSS_ENTROPY = "categorical_crossentropy"

# Probability clamp applied by the loss.
LOSS_EPSILON = 1e-7

# Artifact file names.
FILE_CLEANED = "cleaned.tsv"
FILE_SPLIT_META = "split.json"
FILE_DISTRIBUTION = "distribution.json"
FILE_SPEC = "spec.json"
FILE_WEIGHTS = "weights.pt"
FILE_LABELS = "labels.txt"
FILE_VOCAB = "vocab.tsv"
FILE_VECTORS = "vectors.txt"
FILE_MANIFEST = "manifest.json"
FILE_HISTORY = "history.jsonl"
DIR_TOKENIZER = "tokenizer"
DIR_ENCODER = "encoder"

# Prediction TSV columns.
PREDICTION_COLUMNS = (
    "id",
    "label",
    "p_homophobic",
    "p_transphobic",
    "p_non_anti_lgbt",
)

# Process exit codes.
EXIT_SUCCESS = 0
EXIT_VALIDATION_ERROR = 2
EXIT_RUNTIME_ERROR = 3

# Note recorded in every manifest.
VALIDATION_PROTOCOL_NOTE = (
    "validation split is a protocol choice of this toolkit; "
    "the published experiments do not state one"
)
