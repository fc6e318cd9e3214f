import zolldisks.default_config as default_config
from typing import Dict, Optional

from zolldisks.errors import UnknownConfigKey

# Use default config but allow it to be overridden
_config: Optional[Dict] = None


def initialize_config():
    """Initialize the configuration with default values."""
    global _config
    if _config is None:
        _config = default_config.DEFAULT_CONFIG.copy()


def set_config(config: Dict):
    """Update the configuration with custom values."""
    global _config
    if _config is None:
        _config = default_config.DEFAULT_CONFIG.copy()
    unknown = set(config) - set(default_config.DEFAULT_CONFIG)
    if unknown:
        raise UnknownConfigKey(f"Unknown config keys: {sorted(unknown)}")
    _config.update(config)


def reset_config():
    """Restore the defaults (used by tests and by repeated CLI invocations)."""
    global _config
    _config = None
    initialize_config()


def get_config() -> Dict:
    """Get the current configuration."""
    if _config is None:
        initialize_config()
    return _config.copy()


def resolve(value, key: str):
    """Return `value` unless it is None, in which case read `key` from the config."""
    return get_config()[key] if value is None else value


# Initialize with default config
initialize_config()
