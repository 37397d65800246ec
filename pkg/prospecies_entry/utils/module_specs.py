# ============================================================================
# FILE: prospecies_entry/utils/module_specs.py
# ============================================================================
"""Modules named on the command line: regular, zero, simple:<label>, projective:<label>, local:<vertex>"""

from typing import Optional
import logging

from prospecies_entry.core.errors import DomainError
from prospecies_entry.engine.algebra import Algebra
from prospecies_entry.engine.modules import Module, indecomposable_projective, simple_module
from prospecies_entry.engine.prospecies import GradedAlgebra, local_module
from prospecies_entry.utils.validators import validate_module_spec

logger = logging.getLogger(__name__)


def _idempotent(A: Algebra, label: str) -> int:
    if label not in A.idempotent_labels:
        raise DomainError(f"{A.name} has no vertex {label}; vertices: {', '.join(A.idempotent_labels)}")
    return A.idempotent_index(label)


def build_module(A: Algebra, spec: str, T: Optional[GradedAlgebra] = None) -> Module:
    """Module over A described by spec

    Args:
        A: Algebra the module lives over
        spec: Module spec as given to --module
        T: The tensor algebra A comes from; needed by local:<vertex>

    Returns:
        The module, named after the --module string
    """
    ok, message = validate_module_spec(spec)
    if not ok:
        raise DomainError(message)
    kind, _, label = spec.partition(':')
    if kind == 'regular':
        M = Module.regular(A)
    elif kind == 'zero':
        M = Module.zero(A)
    elif kind == 'simple':
        M = simple_module(A, _idempotent(A, label))
    elif kind == 'projective':
        M, _ = indecomposable_projective(A, _idempotent(A, label))
    else:
        if T is None or T.algebra is not A:
            raise DomainError("local:<vertex> names a module over a tensor algebra")
        if label not in T.prospecies.quiver.vertices:
            raise DomainError(f"No vertex {label} in {T.prospecies.name}")
        M = local_module(T, label)
    M.name = spec
    logger.debug(f"Module {spec} over {A.name}: dim {M.dim}")
    return M
