# ./utils/logger.py
# Modular logging system with configurable toggles via a text file

import logging
import os
from typing import Dict, Optional

from dotenv import dotenv_values

# Config file path: repository root unless SAECF_LOG_CONFIG says otherwise
CONFIG_FILE = os.environ.get(
    "SAECF_LOG_CONFIG",
    os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "logging_config.txt"),
)

DEFAULT_CONFIG = {
    "ENABLE_LOGGING": "1",
    "LOG_LEVEL": "INFO",
    "LOG_TO_FILE": "0",
    "SAMPLER_LOGS": "0",
    "TRAINER_LOGS": "0",
    "EVAL_LOGS": "0",
}

logger = logging.getLogger("SaecfLogger")
logger.setLevel(logging.DEBUG)  # Base level, filtered by handlers
logger.propagate = False

console_handler = logging.StreamHandler()
formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
console_handler.setFormatter(formatter)

file_handler: Optional[logging.FileHandler] = None

logger.config = dict(DEFAULT_CONFIG)


def load_config(path: Optional[str] = None, level_override: Optional[str] = None) -> Dict[str, str]:
    """Load the logging toggles and rebuild the handlers."""
    global file_handler

    config = dict(DEFAULT_CONFIG)
    config_path = path or CONFIG_FILE
    if os.path.exists(config_path):
        try:
            values = dotenv_values(config_path)
            config.update({k.strip(): (v or "").strip() for k, v in values.items()})
        except Exception as e:
            logger.error(f"Failed to parse logging config {config_path}: {e}")

    if level_override:
        config["LOG_LEVEL"] = level_override

    log_level = getattr(logging, config["LOG_LEVEL"].upper(), logging.INFO)

    logger.handlers = []
    if config["ENABLE_LOGGING"] == "1":
        console_handler.setLevel(log_level)
        logger.addHandler(console_handler)
        if config["LOG_TO_FILE"] == "1":
            if file_handler is None:
                os.makedirs("logs", exist_ok=True)
                file_handler = logging.FileHandler("logs/output.log")
                file_handler.setFormatter(formatter)
            file_handler.setLevel(log_level)
            logger.addHandler(file_handler)

    logger.config = config
    return config


def _channel(flag: str, tag: str, message: str, level: str) -> None:
    if logger.config.get(flag) == "1":
        logger.log(getattr(logging, level.upper()), f"[{tag}] {message}")


def log_sampler(message: str, level: str = "DEBUG") -> None:
    """Log batch sampling details, if enabled."""
    _channel("SAMPLER_LOGS", "SAMPLER", message, level)


def log_trainer(message: str, level: str = "DEBUG") -> None:
    """Log per-batch training details, if enabled."""
    _channel("TRAINER_LOGS", "TRAINER", message, level)


def log_eval(message: str, level: str = "DEBUG") -> None:
    """Log evaluation progress, if enabled."""
    _channel("EVAL_LOGS", "EVAL", message, level)


def debug(message: str) -> None:
    logger.debug(message)


def info(message: str) -> None:
    logger.info(message)


def warning(message: str) -> None:
    logger.warning(message)


def error(message: str) -> None:
    logger.error(message)


# Load config on import
load_config()
