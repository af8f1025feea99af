import logging
import sys

from app.config import settings


def _level() -> int:
    if settings.LOG_LEVEL:
        return logging.getLevelName(settings.LOG_LEVEL.upper())
    return logging.DEBUG if settings.DEBUG else logging.INFO


def setup_logger(name: str) -> logging.Logger:
    """Set up and return a logger with the given name.

    Logs go to stderr unless LOG_STREAM says otherwise; stdout carries CLI output.
    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        level = _level()
        logger.setLevel(level)

        stream = sys.stdout if settings.LOG_STREAM == "stdout" else sys.stderr
        handler = logging.StreamHandler(stream)
        handler.setLevel(level)
        handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        logger.addHandler(handler)
        logger.propagate = False

    return logger
