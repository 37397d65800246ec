# ============================================================================
# FILE: prospecies_entry/__init__.py
# ============================================================================
"""Pro-species toolkit - runtime start-up and CLI factory"""

from random import Random
from typing import Optional
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.cache import StructureCache
from prospecies_entry.core import globals as app_globals

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def init_runtime(seed: Optional[int] = None) -> None:
    """Create the structure cache and the seeded generator

    Called by the CLI group before any command runs and by the test suite.
    """
    try:
        app_globals.seed = settings.PROSPECIES_SEED if seed is None else seed
        app_globals.rng = Random(app_globals.seed)

        # Initialize cache
        if app_globals.cache is None:
            app_globals.cache = StructureCache()
        app_globals.cache.initialize()

        logger.info(f"✓ Runtime initialized (seed={app_globals.seed})")
    except Exception as e:
        logger.error(f"Failed to initialize runtime: {e}")
        raise


def create_cli():
    """Create the click command group"""
    from prospecies_entry.cli.routes import cli

    logger.debug("CLI group created")
    return cli
