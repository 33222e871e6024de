"""
Loads environment variables and defines configuration settings for ppgroup.
- Reads the log level and the path of the default settings file from the .env file.
- Sets up basic logging for the library and the command line.
"""

import logging
import os
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
ENV_FILE_PATH = BASE_DIR / ".env"

ENV_FILE_FOUND = ENV_FILE_PATH.exists()
if ENV_FILE_FOUND:
    load_dotenv(ENV_FILE_PATH)

DEFAULT_SETTINGS_FILE_PATH_STR = os.getenv("DEFAULT_SETTINGS_FILE_PATH", "data/default_settings.json")
DEFAULT_SETTINGS_FILE_PATH = BASE_DIR / DEFAULT_SETTINGS_FILE_PATH_STR

SETTINGS_ENV_PREFIX = "PPGROUP_"

LOG_LEVEL_STR = os.getenv("LOG_LEVEL", "WARNING").upper()
LOG_LEVEL = getattr(logging, LOG_LEVEL_STR, logging.WARNING)

logging.basicConfig(
    level=LOG_LEVEL,
    format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
    handlers=[
        logging.StreamHandler()
    ]
)
logger = logging.getLogger(__name__)

if not ENV_FILE_FOUND:
    logger.debug(f".env file not found at {ENV_FILE_PATH}. Using process environment only.")

if not DEFAULT_SETTINGS_FILE_PATH.exists():
    logger.error(
        f"Default settings JSON file not found at {DEFAULT_SETTINGS_FILE_PATH}. "
        "Built-in fallbacks will be used for every setting."
    )

logger.info("Configuration loaded.")
