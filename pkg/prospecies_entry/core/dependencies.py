# ============================================================================
# FILE: prospecies_entry/core/dependencies.py
# ============================================================================
"""Accessors for the runtime instances used by the engine"""

from random import Random
import logging

from prospecies_entry.core import globals as app_globals
from prospecies_entry.core.cache import StructureCache
from prospecies_entry.core.errors import RuntimeUnavailable

logger = logging.getLogger(__name__)


def get_cache() -> StructureCache:
    """Get cache instance

    This provides the structure cache to any engine routine that needs it
    """
    if app_globals.cache is None:
        logger.error("Cache is not available")
        raise RuntimeUnavailable("Structure cache unavailable; call init_runtime() first")
    return app_globals.cache


def get_rng() -> Random:
    """Get the seeded random generator"""
    if app_globals.rng is None:
        logger.error("Random generator is not available")
        raise RuntimeUnavailable("Random generator unavailable; call init_runtime() first")
    return app_globals.rng


def get_seed() -> int:
    """Seed the runtime was initialised with"""
    if app_globals.seed is None:
        raise RuntimeUnavailable("Runtime seed unavailable; call init_runtime() first")
    return app_globals.seed
