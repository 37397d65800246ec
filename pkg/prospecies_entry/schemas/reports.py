# ============================================================================
# FILE: prospecies_entry/schemas/reports.py
# ============================================================================
"""Verdicts and machine-readable command reports"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


# ==================== VERDICTS ====================

class IsoVerdict(str, Enum):
    """Outcome of an isomorphism search"""
    TRUE = "true"
    FALSE = "false"
    PROBABLY_NOT = "probably_not"


class GPVerdict(str, Enum):
    """Three-valued Gorenstein-projectivity outcome"""
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class Dimension(BaseModel):
    """A homological dimension; exact=False means 'at least value'"""
    value: int = Field(..., ge=0)
    exact: bool = Field(True, description="False when the bound was exhausted")

    def at_most(self, n: int) -> bool:
        return self.exact and self.value <= n

    def render(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


# ==================== RESULT PAYLOADS ====================

class AlgebraSummary(BaseModel):
    """Dimensions of a constructed algebra"""
    name: str
    dimension: int
    graded_dimensions: Optional[List[int]] = None
    finite_certified: Optional[bool] = None
    truncation: Optional[int] = None
    cartan_matrix: Optional[List[List[int]]] = None
    basis: Optional[List[str]] = None


class ValuationReport(BaseModel):
    """c_i per vertex and (c_α, c_α*) per arrow"""
    vertex_dimensions: Dict[str, int]
    arrow_ranks: Dict[str, List[int]]


class DualisableReport(BaseModel):
    """Per-arrow dualisability verdicts"""
    dualisable: bool
    arrows: Dict[str, IsoVerdict]
    convention: str = Field(..., description="How the starred bimodule is identified")


class GorensteinReport(BaseModel):
    """The six equivalent conditions evaluated on one module"""
    n: int
    conditions: List[bool]
    resolution_bound: int
    injective_dimension_bound_met: Optional[bool] = None


class ResolutionReport(BaseModel):
    """Minimal projective resolution summary"""
    terms: List[List[str]] = Field(..., description="Each P_k as vertex labels of its summands")
    syzygy_dimensions: List[int]
    projective_dimension: Dimension


class ReflectionReport(BaseModel):
    """Dimension vectors before and after a reflection"""
    vertex: str
    direction: str
    functor: str
    before: Dict[str, int]
    after: Dict[str, int]
    sequences_exact: Optional[bool] = None
    sign_convention: str = "signs on in-maps: +1 on Q1, -1 on starred arrows"


class SequenceReport(BaseModel):
    """0→sub→M→Σ⁺Σ⁻M→0 and 0→Σ⁻Σ⁺M→M→fac→0 checked by ranks"""
    vertex: str
    sub_dimension: int
    fac_dimension: int
    first_exact: bool
    second_exact: bool
    unit_iso: bool = Field(..., description="M → Σ⁺Σ⁻M invertible at the vertex; false whenever sub is nonzero")
    counit_iso: bool = Field(..., description="Σ⁻Σ⁺M → M invertible at the vertex; false whenever fac is nonzero")


class SeparationReport(BaseModel):
    """Separation functor output"""
    gamma_dimension: int
    separated_vertices: List[str]
    dimension_vector: Dict[str, int]
    in_rep_epi: bool


class CommandReport(BaseModel):
    """Envelope every CLI command prints"""
    command: str
    instance_hash: str
    field: str
    seed: int
    result: Any
    metadata: Dict[str, Any] = Field(default_factory=dict)
