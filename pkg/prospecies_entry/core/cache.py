# ============================================================================
# FILE: prospecies_entry/core/cache.py
# ============================================================================
"""Structure caching system for derived algebras, duals and tensor spaces"""

from datetime import datetime
from typing import Any, Callable, Dict, Tuple
import logging

logger = logging.getLogger(__name__)


class StructureCache:
    """In-memory cache keyed by object identity

    Entries keep their key objects alive, so an id() is never reused while the
    entry exists.
    """

    STORES = ("enveloping", "duals", "tensor_spaces", "dual_bases")

    def __init__(self):
        """Initialize empty stores"""
        self.created_at: datetime = None  # type: ignore

        # Cache stores
        self.enveloping_cache: Dict[Tuple[int, ...], Tuple[Any, Any]] = {}
        self.dual_cache: Dict[Tuple[int, ...], Tuple[Any, Any]] = {}
        self.tensor_cache: Dict[Tuple[int, ...], Tuple[Any, Any]] = {}
        self.dual_basis_cache: Dict[Tuple[int, ...], Tuple[Any, Any]] = {}

        self.hits = 0
        self.misses = 0
        logger.debug("StructureCache initialized")

    def initialize(self) -> None:
        """Reset all stores on startup"""
        try:
            self.clear()
            self.created_at = datetime.utcnow()
            logger.info("✓ Structure cache initialized successfully")
        except Exception as e:
            logger.error(f"Failed to initialize cache: {e}")
            raise

    def clear(self) -> None:
        """Drop every cached structure"""
        self.enveloping_cache.clear()
        self.dual_cache.clear()
        self.tensor_cache.clear()
        self.dual_basis_cache.clear()
        self.hits = 0
        self.misses = 0

    def _lookup(self, store: Dict, keys: Tuple[Any, ...], tag: str, builder: Callable[[], Any]) -> Any:
        key = (hash(tag),) + tuple(id(k) for k in keys)
        entry = store.get(key)
        if entry is not None:
            self.hits += 1
            return entry[1]
        self.misses += 1
        value = builder()
        store[key] = (keys, value)
        return value

    def get_enveloping(self, left: Any, right: Any, builder: Callable[[], Any]) -> Any:
        """Cached left ⊗ right^op"""
        return self._lookup(self.enveloping_cache, (left, right), "env", builder)

    def get_dual(self, bimodule: Any, side: str, builder: Callable[[], Any]) -> Any:
        """Cached left or right dual of a bimodule"""
        return self._lookup(self.dual_cache, (bimodule,), side, builder)

    def get_tensor(self, left: Any, right: Any, builder: Callable[[], Any]) -> Any:
        """Cached balanced tensor product"""
        return self._lookup(self.tensor_cache, (left, right), "tensor", builder)

    def get_dual_basis(self, module: Any, builder: Callable[[], Any]) -> Any:
        """Cached dual basis of a projective module"""
        return self._lookup(self.dual_basis_cache, (module,), "dual_basis", builder)

    def stats(self) -> Dict[str, int]:
        """Entry counts per store plus hit/miss counters"""
        return {
            "enveloping": len(self.enveloping_cache),
            "duals": len(self.dual_cache),
            "tensor_spaces": len(self.tensor_cache),
            "dual_bases": len(self.dual_basis_cache),
            "hits": self.hits,
            "misses": self.misses,
        }
