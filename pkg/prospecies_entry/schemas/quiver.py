# ============================================================================
# FILE: prospecies_entry/schemas/quiver.py
# ============================================================================
"""Quiver, path and relation schemas"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from prospecies_entry.core.config import settings


class Arrow(BaseModel):
    """Arrow label with its endpoints"""
    model_config = ConfigDict(frozen=True)

    label: str = Field(..., min_length=1, description="Arrow label")
    source: str = Field(..., min_length=1, description="Source vertex")
    target: str = Field(..., min_length=1, description="Target vertex")

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class Quiver(BaseModel):
    """Finite quiver; declaration order is the canonical order everywhere"""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...] = Field(..., description="Vertex labels")
    arrows: Tuple[Arrow, ...] = Field(default=(), description="Arrows")

    @model_validator(mode='after')
    def validate_labels(self):
        """Labels unique and endpoints declared"""
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"Duplicate vertex labels in {self.vertices}")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError(f"Duplicate arrow labels in {labels}")
        declared = set(self.vertices)
        for a in self.arrows:
            if a.source not in declared or a.target not in declared:
                raise ValueError(f"Arrow {a.label} uses an undeclared vertex")
        return self

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def has_arrow(self, label: str) -> bool:
        return any(a.label == label for a in self.arrows)

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def arrows_into(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def vertex_index(self, vertex: str) -> int:
        return self.vertices.index(vertex)


class Path(BaseModel):
    """Path in a quiver

    `arrows` lists the arrows in traversal order (first arrow first); the path
    prints right to left, so arrows ("a", "b") print as "b.a". A trivial path
    has no arrows and source == target.
    """
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def render(self) -> str:
        if not self.arrows:
            return f"e[{self.source}]"
        return ".".join(reversed(self.arrows))

    def __str__(self) -> str:
        return self.render()


class Term(BaseModel):
    """Coefficient times a path; the coefficient is an exact rational in text form"""
    model_config = ConfigDict(frozen=True)

    coefficient: str = Field("1", description="Exact rational coefficient")
    path: Path

    @field_validator('coefficient', mode='before')
    @classmethod
    def validate_coefficient(cls, v):
        """Normalise to the reduced fraction text"""
        try:
            return str(Fraction(str(v)))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Invalid coefficient: {v}")


class Relation(BaseModel):
    """Linear combination of paths"""
    model_config = ConfigDict(frozen=True)

    terms: Tuple[Term, ...] = Field(..., description="Nonzero terms")
    name: Optional[str] = Field(None, description="Optional relation tag")

    def render(self) -> str:
        parts = []
        for t in self.terms:
            c = Fraction(t.coefficient)
            body = t.path.render()
            if c == 1:
                parts.append(f"+ {body}")
            elif c == -1:
                parts.append(f"- {body}")
            elif c < 0:
                parts.append(f"- {-c}*{body}")
            else:
                parts.append(f"+ {c}*{body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:] if text.startswith("- ") else text


class BoundQuiverPresentation(BaseModel):
    """kQ modulo an admissible ideal given by generators

    Optional arrow weights with max_weight additionally kill every path of
    weight above max_weight (graded truncation).
    """
    model_config = ConfigDict(frozen=True)

    quiver: Quiver
    relations: Tuple[Relation, ...] = ()
    nilpotency_bound: int = Field(default_factory=lambda: settings.NILPOTENCY_BOUND, ge=1)
    weights: Optional[Dict[str, int]] = Field(None, description="Arrow weights, default 1; weight 0 arrows do not count")
    max_weight: Optional[int] = Field(None, ge=0, description="Paths above this weight vanish")

    @field_validator('weights')
    @classmethod
    def validate_weights(cls, v):
        if v is not None and any(w < 0 for w in v.values()):
            raise ValueError("Arrow weights must be nonnegative")
        return v

    def weight_of(self, arrow: str) -> int:
        if self.weights is None:
            return 1
        return self.weights.get(arrow, 1)
