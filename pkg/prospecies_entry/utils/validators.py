# ============================================================================
# FILE: prospecies_entry/utils/validators.py
# ============================================================================
"""Input validation utilities"""

import re
from typing import Tuple
import logging

from prospecies_entry.schemas.quiver import Quiver

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"^[A-Za-z0-9_#]+$")
MODULE_KINDS = {'regular', 'zero', 'simple', 'projective', 'local'}
RESERVED_SUFFIXES = ('_star', '_bar', '_op')


def validate_identifier(name: str) -> Tuple[bool, str]:
    """Validate a vertex or arrow label

    Args:
        name: Label as written in the instance

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not name or not IDENTIFIER.match(name):
        return False, f"Invalid identifier: {name!r}"
    return True, ""


def validate_quiver_labels(quiver: Quiver) -> Tuple[bool, str]:
    """Arrow labels must leave the constructed suffixes free"""
    for a in quiver.arrows:
        if a.label.endswith(RESERVED_SUFFIXES):
            error_msg = f"Arrow {a.label} ends in a reserved suffix ({', '.join(RESERVED_SUFFIXES)})"
            logger.warning(error_msg)
            return False, error_msg
    for v in quiver.vertices:
        if v.endswith('_bar'):
            return False, f"Vertex {v} ends in the reserved suffix _bar"
    return True, ""


def validate_module_spec(spec: str) -> Tuple[bool, str]:
    """Validate a --module spec

    Args:
        spec: regular, zero, simple:<label>, projective:<label> or local:<vertex>

    Returns:
        Tuple of (is_valid, error_message)
    """
    kind, _, label = spec.partition(':')
    if kind not in MODULE_KINDS:
        return False, f"Unknown module kind {kind!r}; use one of {', '.join(sorted(MODULE_KINDS))}"
    if kind in ('regular', 'zero'):
        if label:
            return False, f"Module kind {kind} takes no label"
        return True, ""
    if not label:
        return False, f"Module kind {kind} needs a label, as in {kind}:1"
    return validate_identifier(label)


def validate_direction(direction: str) -> Tuple[bool, str]:
    if direction not in ('+', '-'):
        return False, f"Direction must be + or -, got {direction!r}"
    return True, ""


def validate_truncation(n: int) -> Tuple[bool, str]:
    """Π(Λ) needs its degree-2 relation inside the truncation"""
    if n < 2:
        return False, f"Truncation degree must be at least 2, got {n}"
    return True, ""
