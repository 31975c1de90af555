"""Logging setup that plays well with tqdm progress bars."""

import logging

from tqdm import tqdm

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


# Handler for logging with tqdm
class TqdmLoggingHandler(logging.Handler):
    """
    Custom logging handler compatible with tqdm progress bars.
    """

    def __init__(self, level=logging.NOTSET):
        super().__init__(level)

    def emit(self, record):
        try:
            msg = self.format(record)
            tqdm.write(msg)
            self.flush()
        except Exception:
            self.handleError(record)


def configure_logging(level='WARNING', logger_name='homdual'):
    """
    Attaches a single TqdmLoggingHandler to the package logger.

    Calling it again only updates the level.

    Args:
        level (str or int): Logging level name or number.
        logger_name (str): Logger to configure.

    Returns:
        logging.Logger: The configured logger.
    """
    logger = logging.getLogger(logger_name)
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    logger.setLevel(level)
    if not any(isinstance(h, TqdmLoggingHandler) for h in logger.handlers):
        handler = TqdmLoggingHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
