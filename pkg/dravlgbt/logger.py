"""
.. module:: logger.py
   :license: GPL/CeCIL
   :platform: Unix
   :synopsis: Logging utility functions.

.. moduleauthor:: dravlgbt developers


"""
import datetime as dt
import sys

from dravlgbt import options



# Set of logging levels.
LOG_LEVEL_DEBUG = 'DEBUG'
LOG_LEVEL_INFO = 'INFO'
LOG_LEVEL_WARNING = 'WARNING'
LOG_LEVEL_ERROR = 'ERROR'

# Level precedence.
_LEVELS = (
    LOG_LEVEL_DEBUG,
    LOG_LEVEL_INFO,
    LOG_LEVEL_WARNING,
    LOG_LEVEL_ERROR,
)

# Module logging name.
_MODULE = "DRAVLGBT"

# Text to display when passed a null message.
_NULL_MSG = "-------------------------------------------------------------------------------"


def log(msg=None, level=LOG_LEVEL_INFO, module=None):
    """Outputs a message to log.

    :param str msg: Message to be written to log.
    :param str level: Message level (e.g. INFO).
    :param str module: Package module emitting the message (e.g. trainer).

    """
    if not _is_enabled(level):
        return
    stream = sys.stderr if level == LOG_LEVEL_ERROR else sys.stdout
    print(_get_formatted_message(msg, level, module), file=stream)


def log_debug(msg, module=None):
    """Logs a debug event.

    """
    log(msg, LOG_LEVEL_DEBUG, module)


def log_warning(msg, module=None):
    """Logs a warning event.

    :param str msg: A log message.
    :param str module: Package module emitting the message.

    """
    log(msg, LOG_LEVEL_WARNING, module)


def log_error(err, module=None):
    """Logs a runtime error.

    :param Exception err: Error to be written to log.
    :param str module: Package module emitting the message.

    """
    msg = "!! RUNTIME ERROR !! :: "
    if isinstance(err, BaseException):
        msg += "{} :: ".format(err.__class__.__name__)
    msg += "{}".format(err)
    log(msg, LOG_LEVEL_ERROR, module)


def _is_enabled(level):
    """Returns flag indicating whether a level passes the configured threshold.

    """
    try:
        threshold = _LEVELS.index(options.LOG_LEVEL)
    except ValueError:
        threshold = _LEVELS.index(LOG_LEVEL_INFO)

    return _LEVELS.index(level) >= threshold


def _get_formatted_message(msg, level, module):
    """Returns a message formatted for logging.

    """
    if msg is None:
        return _NULL_MSG

    return "{} [{}] :: {} > {} :: {}".format(
        str(dt.datetime.utcnow())[0:19],
        level,
        _MODULE,
        module or "main",
        str(msg).strip()
        )
