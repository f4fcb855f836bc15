"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import logging
import os

LOG_FORMAT = "[%(asctime)s] [%(levelname)s] [%(name)s] - %(message)s"
DATE_FORMAT = "%m/%d/%Y %I:%M:%S %p"


def _make_file_handler(dirname: str) -> logging.FileHandler:
    os.makedirs(dirname, exist_ok=True)
    # the file is opened on the first record
    handler = logging.FileHandler(os.path.join(dirname, "volergo.log"), delay=True)
    handler.setLevel(logging.INFO)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
    return handler


class Log:
    """
    Registry of the loggers used across the volergo packages.

    Every controller, solver and benchmark object registers its module logger here so the CLI
    can silence or raise the verbosity of all of them at once.

    Attributes
    ----------
    dirname: str
        Directory holding ``volergo.log``
    file_handler: logging.FileHandler
        Shared handler writing to the log file
    console_handler: logging.StreamHandler
        Shared handler writing to stderr
    file_output: bool
        Whether newly registered loggers write to the log file
    console_output: bool
        Whether newly registered loggers write to the console
    default_level: int
        Level given to newly registered loggers
    loggers: set
        Every registered logger
    """

    dirname: str = os.path.join(os.path.expanduser("~"), ".volergo", "logs")
    file_handler: logging.FileHandler = _make_file_handler(dirname)
    console_handler: logging.StreamHandler = logging.StreamHandler()
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))

    file_output: bool = True
    console_output: bool = True
    default_level: int = logging.INFO

    loggers: set = set()

    @staticmethod
    def register_logger(name: str) -> logging.Logger:
        """
        Create a logger, attach the shared handlers and remember it.

        Parameters
        ----------
        name: str
            Logger name, normally the ``__name__`` of the calling module

        Returns
        -------
        logging.Logger
            The registered logger
        """
        logger = logging.getLogger(name)
        for handler, enabled in ((Log.console_handler, Log.console_output), (Log.file_handler, Log.file_output)):
            if enabled and handler not in logger.handlers:
                logger.addHandler(handler)
        if logger.level == logging.NOTSET:
            logger.setLevel(Log.default_level)
        logger.propagate = False
        Log.loggers.add(logger)
        return logger

    @staticmethod
    def set_all_logger_level(level: int):
        """
        Set the level of every registered logger and of their handlers.

        Parameters
        ----------
        level: int
            The new level
        """
        Log.default_level = level
        for logger in Log.loggers:
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)

    @staticmethod
    def set_verbosity(verbose: bool):
        """
        Switch between the quiet console (warnings only) and the verbose one (info and up).

        Parameters
        ----------
        verbose: bool
            True to echo progress messages on the console
        """
        Log.console_handler.setLevel(logging.INFO if verbose else logging.WARNING)

    @staticmethod
    def close(logger: logging.Logger):
        """
        Disable a logger.

        Parameters
        ----------
        logger: logging.Logger
            The logger to silence
        """
        logger.disabled = True

    @staticmethod
    def open(logger: logging.Logger):
        """
        Enable a logger.

        Parameters
        ----------
        logger: logging.Logger
            The logger to re-enable
        """
        logger.disabled = False

    @staticmethod
    def close_all():
        """Disable all loggers."""
        for logger in Log.loggers:
            logger.disabled = True

    @staticmethod
    def open_all():
        """Enable all loggers."""
        for logger in Log.loggers:
            logger.disabled = False

    @staticmethod
    def _toggle(handler: logging.Handler, enabled: bool):
        for logger in Log.loggers:
            if enabled and handler not in logger.handlers:
                logger.addHandler(handler)
            elif not enabled:
                logger.removeHandler(handler)

    @staticmethod
    def close_console_output():
        """Stop writing log records to the console."""
        Log.console_output = False
        Log._toggle(Log.console_handler, False)

    @staticmethod
    def open_console_output():
        """Resume writing log records to the console."""
        Log.console_output = True
        Log._toggle(Log.console_handler, True)

    @staticmethod
    def close_file_output():
        """Stop writing log records to the log file."""
        Log.file_output = False
        Log._toggle(Log.file_handler, False)

    @staticmethod
    def open_file_output():
        """Resume writing log records to the log file."""
        Log.file_output = True
        Log._toggle(Log.file_handler, True)
