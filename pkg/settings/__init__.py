"""Settings module for entropy perturbation."""
from settings.config import Settings, get_settings

__all__ = ["Settings", "get_settings"]
