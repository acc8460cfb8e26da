# Adapted from MMF: https://github.com/facebookresearch/mmf/blob/master/mmf/utils/logger.py
# Copyright (c) Facebook, Inc. and its affiliates.

import functools
import logging
import os
import sys

from termcolor import colored

PLAIN_FORMAT = "%(asctime)s | %(levelname)s | %(name)s : %(message)s"
DATE_FORMAT = "%Y-%m-%dT%H:%M:%S"


def setup_logger(
    output: str = None,
    color: bool = True,
    name: str = "gapforge",
    level: int = logging.INFO,
    clear_handlers: bool = True,
):
    """
    Install the console handler (and a file handler when `output` is given)
    on the root logger so that every module logger is captured.
    Args:
        output (str): a file name or a directory to save log.
            If ends with ".txt" or ".log", assumed to be a file name,
            otherwise the log goes to <output>/run.log.
        color (bool): If false, won't log colored logs. Default: true
        name (str): name of the returned logger.
        level (int): logging level for all handlers.
        clear_handlers (bool): If false, won't clear existing root handlers.
    Returns:
        logging.Logger: a logger
    """
    logging.captureWarnings(True)
    plain_formatter = logging.Formatter(PLAIN_FORMAT, datefmt=DATE_FORMAT)
    handlers = []

    ch = logging.StreamHandler(stream=sys.stdout)
    ch.setLevel(level)
    if color:
        formatter = ColorfulFormatter(
            colored("%(asctime)s | %(name)s: ", "green") + "%(message)s",
            datefmt=DATE_FORMAT,
        )
    else:
        formatter = plain_formatter
    ch.setFormatter(formatter)
    handlers.append(ch)

    filename = None
    if output is not None:
        if output.endswith(".txt") or output.endswith(".log"):
            filename = output
        else:
            filename = os.path.join(output, "run.log")
        os.makedirs(os.path.dirname(os.path.abspath(filename)), exist_ok=True)
        fh = logging.StreamHandler(_cached_log_stream(filename))
        fh.setLevel(level)
        fh.setFormatter(plain_formatter)
        handlers.append(fh)

    if clear_handlers:
        for handler in logging.root.handlers[:]:
            logging.root.removeHandler(handler)
    logging.basicConfig(level=level, handlers=handlers)

    logger = logging.getLogger(name)
    if filename is not None:
        logger.info(f"Logging to: {filename}")
    return logger


# cache the opened file object, so that different calls to `setup_logger`
# with the same file name can safely write to the same file.
@functools.lru_cache(maxsize=None)
def _cached_log_stream(filename):
    return open(filename, "a")


# ColorfulFormatter is adopted from Detectron2 and adapted for MMF
class ColorfulFormatter(logging.Formatter):
    def formatMessage(self, record):
        log = super().formatMessage(record)
        if record.levelno == logging.WARNING:
            prefix = colored("WARNING", "red", attrs=["blink"])
        elif record.levelno == logging.ERROR or record.levelno == logging.CRITICAL:
            prefix = colored("ERROR", "red", attrs=["blink", "underline"])
        else:
            return log
        return prefix + " " + log
