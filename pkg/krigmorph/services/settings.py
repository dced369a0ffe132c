# settings.py
# Runtime settings for the CLI
# Environment variables (or a .env file) take precedence over built-in defaults;
# explicit command-line flags take precedence over both

import os

from ..errors import ConfigurationError

# Setting keys
CHUNK_SIZE = "chunk_size"
MAX_WORKERS = "max_workers"
LOG_LEVEL = "log_level"

# Map setting keys to environment variable names
ENV_VAR_MAP = {
    CHUNK_SIZE: "KRIGMORPH_CHUNK",
    MAX_WORKERS: "KRIGMORPH_WORKERS",
    LOG_LEVEL: "KRIGMORPH_LOG_LEVEL",
}

DEFAULTS = {
    CHUNK_SIZE: "4096",
    MAX_WORKERS: "4",
    LOG_LEVEL: "warn",
}

LOG_LEVELS = ("error", "warn", "info", "debug")


def get_setting(key, default=None):
    """Get a setting value. Environment variables take precedence over defaults."""
    env_var = ENV_VAR_MAP.get(key)
    if env_var:
        env_value = os.environ.get(env_var)
        if env_value:
            return env_value.strip()

    if default is not None:
        return default
    return DEFAULTS.get(key)


def get_all_settings():
    """Get all settings as a dictionary."""
    return {key: get_setting(key) for key in ENV_VAR_MAP}


def _positive_int(key):
    raw = get_setting(key)
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{ENV_VAR_MAP[key]} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"{ENV_VAR_MAP[key]} must be positive, got {value}")
    return value


# Convenience functions for specific settings
def get_chunk_size():
    """Column block size used when assembling weight matrices."""
    return _positive_int(CHUNK_SIZE)


def get_max_workers():
    """Number of threads used when assembling weight matrices."""
    return _positive_int(MAX_WORKERS)


def get_log_level():
    """Log level name, one of LOG_LEVELS."""
    level = get_setting(LOG_LEVEL).lower()
    if level not in LOG_LEVELS:
        raise ConfigurationError(
            f"{ENV_VAR_MAP[LOG_LEVEL]} must be one of {', '.join(LOG_LEVELS)}, got {level!r}"
        )
    return level
