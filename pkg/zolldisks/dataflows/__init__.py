from .config import get_config, set_config, reset_config

__all__ = ["get_config", "set_config", "reset_config"]
