# ============================================================================
# FILE: prospecies_entry/core/globals.py
# ============================================================================
"""Global runtime instances - structure cache and seeded generator"""

from random import Random
from typing import Optional

from prospecies_entry.core.cache import StructureCache

# Global instances
cache: Optional[StructureCache] = None
rng: Optional[Random] = None
seed: Optional[int] = None
