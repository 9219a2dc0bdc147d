"""
.. module:: options.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Library overrideable options.

.. moduleauthor:: dravlgbt developers


"""
import os

import torch

from dravlgbt import constants



# Default output root.
IO_DIR = os.getenv(constants.ENV_VAR_IO_DIR) or constants.DEFAULT_IO_DIR

# Transformer checkpoint cache directory (None = library default).
CHECKPOINT_CACHE = os.getenv(constants.ENV_VAR_CHECKPOINT_CACHE) or None

# Torch device.
DEVICE = os.getenv(constants.ENV_VAR_DEVICE) or \
         ("cuda" if torch.cuda.is_available() else "cpu")

# Minimum log level.
LOG_LEVEL = (os.getenv(constants.ENV_VAR_LOG_LEVEL) or "INFO").upper()
