"""Logging utilities for the LSAT semantics toolkit"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler

from colorama import Fore, Style
from colorama import init as colorama_init
from pythonjsonlogger import jsonlogger

from config import settings

CONSOLE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
FILE_FORMAT = (
    '%(asctime)s - %(name)s - %(levelname)s - [%(process)d] - %(threadName)s'
    ' - %(filename)s:%(lineno)d - %(message)s'
)

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Console formatter that colours the level name on terminals"""

    def __init__(self, fmt, use_color=True):
        super().__init__(fmt)
        self.use_color = use_color

    def format(self, record):
        if not self.use_color:
            return super().format(record)
        original = record.levelname
        color = LEVEL_COLORS.get(record.levelno, '')
        record.levelname = f"{color}{original}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def _resolve_level(level_name=None):
    """Translate a level name (or the configured one) into a logging level"""
    log_level = level_name or getattr(settings, 'LOG_LEVEL', 'WARNING')
    return getattr(logging, str(log_level).upper(), logging.WARNING)


def get_logger(name):
    """
    Get a logger instance for a module

    Handlers live on the root logger (see setup_logging), so module loggers
    only propagate.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


def setup_logging(level_name=None, log_format=None):
    """
    Setup application-wide logging configuration

    Args:
        level_name: Optional level overriding settings.LOG_LEVEL
        log_format: Optional 'text' or 'json' overriding settings.LOG_FORMAT

    Returns:
        The configured root logger
    """
    level = _resolve_level(level_name)
    log_format = log_format or getattr(settings, 'LOG_FORMAT', 'text')

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Clear existing handlers to avoid duplicates
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)

    # Console output goes to stderr; stdout carries command results only
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    if log_format == 'json':
        console_handler.setFormatter(jsonlogger.JsonFormatter(CONSOLE_FORMAT))
    else:
        use_color = sys.stderr.isatty()
        if use_color:
            colorama_init()
        console_handler.setFormatter(ColorFormatter(CONSOLE_FORMAT, use_color=use_color))
    root_logger.addHandler(console_handler)

    # Optional rotating log file (max 10MB, up to 5 backup files)
    log_file = getattr(settings, 'LOG_FILE', '')
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(log_file, maxBytes=10 * 1024 * 1024, backupCount=5)
        file_handler.setLevel(level)
        if log_format == 'json':
            file_handler.setFormatter(jsonlogger.JsonFormatter(FILE_FORMAT))
        else:
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        root_logger.addHandler(file_handler)

    logging.getLogger(__name__).debug("Logging configured successfully")
    return root_logger
