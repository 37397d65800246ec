# ============================================================================
# FILE: prospecies_entry/schemas/presentation.py
# ============================================================================
"""Quiver-with-relations presentations of T(Λ) and Π(Λ)"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from prospecies_entry.schemas.quiver import BoundQuiverPresentation, Quiver, Relation


class ArrowOrigin(str, Enum):
    """Where an arrow of Q̃ comes from"""
    VERTEX = "vertex"
    BIMODULE = "bimodule"


class RelationOrigin(str, Enum):
    """Where a relation comes from"""
    VERTEX = "vertex"
    ARROW = "arrow"
    CASIMIR = "casimir"


class ArrowTag(BaseModel):
    model_config = ConfigDict(frozen=True)

    origin: ArrowOrigin
    outer: str = Field(..., description="Vertex or arrow label of the pro-species")
    index: Optional[int] = Field(None, description="Top basis index for cover arrows")


class RelationTag(BaseModel):
    model_config = ConfigDict(frozen=True)

    origin: RelationOrigin
    outer: str = Field(..., description="Vertex or arrow label of the pro-species")


class Presentation(BaseModel):
    """Q̃ with relations, each arrow and relation tagged with its origin"""
    model_config = ConfigDict(frozen=True)

    name: str = Field("A", description="Name of the presented algebra")
    quiver: Quiver
    relations: Tuple[Relation, ...] = ()
    arrow_tags: Dict[str, ArrowTag] = Field(default_factory=dict)
    relation_tags: Tuple[RelationTag, ...] = ()

    @model_validator(mode='after')
    def validate_tags(self):
        """One tag per arrow and per relation"""
        labels = {a.label for a in self.quiver.arrows}
        if set(self.arrow_tags) != labels:
            raise ValueError("Arrow tags do not match the arrows of the quiver")
        if len(self.relation_tags) != len(self.relations):
            raise ValueError("Every relation needs exactly one origin tag")
        return self

    def cover_arrows(self) -> List[str]:
        return [a.label for a in self.quiver.arrows if self.arrow_tags[a.label].origin == ArrowOrigin.BIMODULE]

    def cover_weights(self) -> Dict[str, int]:
        """1 on cover arrows, 0 on vertex-local arrows"""
        return {a.label: int(self.arrow_tags[a.label].origin == ArrowOrigin.BIMODULE) for a in self.quiver.arrows}

    def relations_of(self, origin: RelationOrigin) -> List[Relation]:
        return [r for r, t in zip(self.relations, self.relation_tags) if t.origin == origin]

    def is_admissible(self) -> bool:
        """Every term has length at least two"""
        return all(t.path.length >= 2 for r in self.relations for t in r.terms)

    def bound_quiver(self, max_weight: Optional[int] = None) -> BoundQuiverPresentation:
        """kQ̃/R, truncated above cover degree max_weight when given"""
        if max_weight is None:
            return BoundQuiverPresentation(quiver=self.quiver, relations=self.relations)
        return BoundQuiverPresentation(quiver=self.quiver, relations=self.relations,
                                       weights=self.cover_weights(), max_weight=max_weight)


class PresentationReport(BaseModel):
    """What `present` and `present-pi` print"""
    name: str
    vertices: int
    arrows: int
    relations: int
    text: str = Field(..., description="The presentation in instance syntax")
    rebuilt_dimension: Optional[int] = None
    graded_dimensions: Optional[List[int]] = None
    certified: Optional[bool] = None
