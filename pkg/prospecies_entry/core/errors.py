# ============================================================================
# FILE: prospecies_entry/core/errors.py
# ============================================================================
"""Exception hierarchy shared by the engine, the DSL and the CLI"""

from typing import Any, Optional


class ProSpeciesError(Exception):
    """Base error; exit_code is what the CLI returns for it"""

    exit_code = 1

    def __init__(self, message: str = "", **context: Any):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.context = context

    def to_dict(self) -> dict:
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "context": {k: str(v) for k, v in self.context.items()},
        }


class DomainError(ProSpeciesError):
    """A mathematical precondition failed"""
    exit_code = 1


class ParseError(ProSpeciesError):
    """Syntax error in a .prosp instance"""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}", line=line, column=column)
        self.line = line
        self.column = column


class RuntimeUnavailable(ProSpeciesError):
    """init_runtime() has not been called"""


# ==================== LINEAR ALGEBRA ====================

class NoSolution(DomainError):
    """Linear system has no solution"""


# ==================== QUIVERS AND ALGEBRAS ====================

class LabelCollision(DomainError):
    """A constructed label already exists"""


class NotSinkOrSource(DomainError):
    """Vertex is not a sink (resp. source)"""


class CyclicQuiver(DomainError):
    """Operation needs an acyclic quiver"""


class NotAdmissible(DomainError):
    """Relation is not a combination of parallel paths of length >= 2"""


class NotNilpotent(DomainError):
    """Arrow ideal is not nilpotent modulo the relations within the bound"""


class CharTooSmall(DomainError):
    """Trace-form radical needs characteristic 0 or p > dim"""


class StructureError(DomainError):
    """An exact structural identity (associativity, linearity, ...) failed"""


# ==================== MODULES ====================

class NotProjective(DomainError):
    """Module admits no dual basis"""


class NotGenerating(DomainError):
    """Given elements do not generate the module"""


# ==================== PRO-SPECIES ====================

class ShapeMismatch(DomainError):
    """Algebras/bimodules do not match the quiver"""


class NotProjectiveLeft(NotProjective):
    """Arrow bimodule is not projective as a left module"""


class NotProjectiveRight(NotProjective):
    """Arrow bimodule is not projective as a right module"""


class NotLocallyFree(DomainError):
    """Arrow bimodule is not free on both sides"""


class NotLocallyProjective(DomainError):
    """Some vertex module is not projective"""


class NotLocallyGorenstein(DomainError):
    """Some vertex algebra is not n-Iwanaga-Gorenstein"""


class NotLocallySelfinjective(DomainError):
    """Some vertex algebra is not selfinjective"""


class NotDualisable(DomainError):
    """Left and right duals of an arrow bimodule are not certified isomorphic"""


class NotFiniteDimensional(DomainError):
    """Truncated algebra carries no finiteness certificate"""


class NotPiModule(DomainError):
    """Representation is not annihilated by the preprojective relation"""


class InstanceError(DomainError):
    """Instance file is well formed but semantically invalid"""


class PresentationMismatch(DomainError):
    """Rebuilt presentation does not reproduce the source algebra"""
