# ============================================================================
# FILE: prospecies_entry/schemas/instance.py
# ============================================================================
"""Syntax tree of a .prosp instance file"""

from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from prospecies_entry.engine.exactla import FieldSpec
from prospecies_entry.schemas.quiver import BoundQuiverPresentation, Quiver


class BimoduleKind(str, Enum):
    """How an arrow bimodule is given"""
    REGULAR = "regular"
    GLS = "gls"
    PRESENTED = "presented"


class GlsParameters(BaseModel):
    """gls(c_s, c_t, f_st, f_ts, g)"""
    model_config = ConfigDict(frozen=True)

    c_s: int = Field(..., ge=1, description="Nilpotency degree at the source")
    c_t: int = Field(..., ge=1, description="Nilpotency degree at the target")
    f_st: int = Field(..., ge=0, description="Exponent on the target factor")
    f_ts: int = Field(..., ge=0, description="Exponent on the source factor")
    g: int = Field(1, ge=1, description="Number of copies")


class Summand(BaseModel):
    """Λ_t e_out ⊗ e_in Λ_s"""
    model_config = ConfigDict(frozen=True)

    out: str = Field(..., description="Vertex of the target algebra quiver")
    inn: str = Field(..., description="Vertex of the source algebra quiver")


class KernelTerm(BaseModel):
    """coefficient · left ⊗ right in one summand; paths in traversal order"""
    model_config = ConfigDict(frozen=True)

    coefficient: str = "1"
    summand: int = Field(..., ge=0)
    left: Tuple[str, ...] = ()
    right: Tuple[str, ...] = ()

    @field_validator('coefficient', mode='before')
    @classmethod
    def validate_coefficient(cls, v):
        try:
            return str(Fraction(str(v)))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Invalid coefficient: {v}")


class AlgebraBlock(BaseModel):
    vertex: str
    presentation: BoundQuiverPresentation
    line: int = 0


class BimoduleBlock(BaseModel):
    arrow: str
    kind: BimoduleKind
    gls: Optional[GlsParameters] = None
    summands: Tuple[Summand, ...] = ()
    kernel: Tuple[Tuple[KernelTerm, ...], ...] = ()
    line: int = 0

    @model_validator(mode='after')
    def validate_kind(self):
        """Parameters present exactly for their kind"""
        if self.kind == BimoduleKind.GLS and self.gls is None:
            raise ValueError(f"Bimodule {self.arrow}: gls needs its parameters")
        if self.kind == BimoduleKind.PRESENTED and not self.summands:
            raise ValueError(f"Bimodule {self.arrow}: presented needs at least one summand")
        for element in self.kernel:
            for t in element:
                if t.summand >= len(self.summands):
                    raise ValueError(f"Bimodule {self.arrow}: kernel uses summand #{t.summand}")
        return self


class InstanceFile(BaseModel):
    """Field, quiver, vertex algebras and arrow bimodules"""
    field: FieldSpec = Field(default_factory=FieldSpec.rationals)
    quiver: Quiver
    algebras: Dict[str, AlgebraBlock] = Field(default_factory=dict)
    bimodules: Dict[str, BimoduleBlock] = Field(default_factory=dict)
    name: str = "Λ"

    @model_validator(mode='after')
    def validate_blocks(self):
        """Blocks refer to declared vertices and arrows; every arrow has a bimodule"""
        for v in self.algebras:
            if v not in self.quiver.vertices:
                raise ValueError(f"Algebra block for undeclared vertex {v}")
        labels = {a.label for a in self.quiver.arrows}
        for a in self.bimodules:
            if a not in labels:
                raise ValueError(f"Bimodule block for undeclared arrow {a}")
        missing = sorted(labels - set(self.bimodules))
        if missing:
            raise ValueError(f"Arrows without a bimodule block: {', '.join(missing)}")
        return self
