#!/usr/bin/env python
# Created by "Thieu" at 09:44, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import logging
import sys

FORMAT = '%(name)-10s %(levelname)-8s %(message)s'


def setup_logger(name="tancert", level=logging.WARNING, stream=None):
    """
    Attach one stderr handler to the named logger (idempotent) and set its level.

    Args:
        name (str): Logger name, "tancert" configures the whole package
        level (int): Logging level
        stream (file-like, optional): Defaults to sys.stderr, diagnostics never go to stdout

    Returns:
        logging.Logger: The configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    for hndlr in logger.handlers:
        if getattr(hndlr, "_tancert", False):
            hndlr.setLevel(level)
            return logger
    hndlr = logging.StreamHandler(sys.stderr if stream is None else stream)
    hndlr.setFormatter(logging.Formatter(FORMAT))
    hndlr.setLevel(level)
    hndlr._tancert = True
    logger.addHandler(hndlr)
    return logger
