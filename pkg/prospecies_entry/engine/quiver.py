# ============================================================================
# FILE: prospecies_entry/engine/quiver.py
# ============================================================================
"""Path bookkeeping and the quiver constructions: double, separated, reflected"""

from typing import Dict, List, Optional
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.errors import LabelCollision, NotSinkOrSource, StructureError
from prospecies_entry.schemas.quiver import Arrow, Path, Quiver

logger = logging.getLogger(__name__)

STAR = "_star"
BAR = "_bar"


def trivial_path(vertex: str) -> Path:
    return Path(source=vertex, target=vertex)


def arrow_path(arrow: Arrow) -> Path:
    return Path(source=arrow.source, target=arrow.target, arrows=(arrow.label,))


def compose(p: Path, q: Path) -> Optional[Path]:
    """The product p·q (q traversed first), or None when not composable"""
    if q.target != p.source:
        return None
    return Path(source=q.source, target=p.target, arrows=q.arrows + p.arrows)


def path_key(Q: Quiver, p: Path):
    """Canonical order: length, then arrow labels, trivial paths by vertex order"""
    return (p.length, p.arrows, Q.vertex_index(p.source))


def path_weight(p: Path, weights: Optional[Dict[str, int]] = None) -> int:
    if not weights:
        return p.length
    return sum(weights.get(a, 1) for a in p.arrows)


def paths_of_length(Q: Quiver, length: int, weights: Optional[Dict[str, int]] = None,
                    max_weight: Optional[int] = None) -> List[Path]:
    """All paths with exactly `length` arrows, in canonical order"""
    if length == 0:
        return [trivial_path(v) for v in Q.vertices]
    current = [arrow_path(a) for a in Q.arrows]
    for _ in range(length - 1):
        extended = []
        for p in current:
            for a in Q.arrows_from(p.target):
                extended.append(Path(source=p.source, target=a.target, arrows=p.arrows + (a.label,)))
        current = extended
        if max_weight is not None:
            current = [p for p in current if path_weight(p, weights) <= max_weight]
        if len(current) > settings.MAX_PATHS:
            raise StructureError(f"More than {settings.MAX_PATHS} paths of length {length}")
    if max_weight is not None:
        current = [p for p in current if path_weight(p, weights) <= max_weight]
    return sorted(current, key=lambda p: path_key(Q, p))


def enumerate_paths(Q: Quiver, max_len: int) -> List[Path]:
    """All paths of length ≤ max_len ordered by (length, arrow labels)"""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    paths: List[Path] = []
    for d in range(max_len + 1):
        layer = paths_of_length(Q, d)
        if d > 0 and not layer:
            break
        paths.extend(layer)
    return paths


def is_acyclic(Q: Quiver) -> bool:
    """Topological-sort criterion"""
    indegree = {v: 0 for v in Q.vertices}
    for a in Q.arrows:
        indegree[a.target] += 1
    ready = [v for v in Q.vertices if indegree[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for a in Q.arrows_from(v):
            indegree[a.target] -= 1
            if indegree[a.target] == 0:
                ready.append(a.target)
    return seen == len(Q.vertices)


def longest_path_length(Q: Quiver) -> int:
    """Length of the longest path of an acyclic quiver"""
    best = {v: 0 for v in Q.vertices}
    for _ in range(len(Q.vertices)):
        for a in Q.arrows:
            best[a.target] = max(best[a.target], best[a.source] + 1)
    return max(best.values(), default=0)


def is_sink(Q: Quiver, vertex: str) -> bool:
    return not Q.arrows_from(vertex)


def is_source(Q: Quiver, vertex: str) -> bool:
    return not Q.arrows_into(vertex)


def is_bipartite(Q: Quiver) -> bool:
    """Every vertex is a sink or a source"""
    return all(is_sink(Q, v) or is_source(Q, v) for v in Q.vertices)


def star_label(label: str) -> str:
    """α ↦ α_star, and α_star ↦ α"""
    if label.endswith(STAR):
        return label[:-len(STAR)]
    return label + STAR


def bar_label(label: str) -> str:
    return label + BAR


def double_quiver(Q: Quiver) -> Quiver:
    """Q̄: every α: i→j gets a partner α_star: j→i"""
    for a in Q.arrows:
        if a.label.endswith(STAR):
            raise LabelCollision(f"Arrow {a.label} already carries the {STAR} suffix", arrow=a.label)
    starred = [Arrow(label=a.label + STAR, source=a.target, target=a.source) for a in Q.arrows]
    taken = {a.label for a in Q.arrows}
    for a in starred:
        if a.label in taken:
            raise LabelCollision(f"Label {a.label} already in use", arrow=a.label)
    logger.debug(f"Doubled quiver with {len(Q.arrows)} arrows")
    return Quiver(vertices=Q.vertices, arrows=Q.arrows + tuple(starred))


def separated_quiver(Q: Quiver) -> Quiver:
    """Vertices Q₀ ⊔ Q̄₀; each α: i→j becomes α_bar: i→j_bar"""
    barred = tuple(bar_label(v) for v in Q.vertices)
    if set(barred) & set(Q.vertices):
        raise LabelCollision("Barred vertex labels collide with existing vertices")
    arrows = tuple(Arrow(label=bar_label(a.label), source=a.source, target=bar_label(a.target)) for a in Q.arrows)
    return Quiver(vertices=Q.vertices + barred, arrows=arrows)


def reflected_quiver(Q: Quiver, vertex: str, direction: str) -> Quiver:
    """Reverse (and star) every arrow at a sink or source"""
    if vertex not in Q.vertices:
        raise NotSinkOrSource(f"Unknown vertex {vertex}", vertex=vertex)
    if direction == "sink":
        ok = is_sink(Q, vertex)
    elif direction == "source":
        ok = is_source(Q, vertex)
    else:
        raise ValueError(f"direction must be 'sink' or 'source', got {direction}")
    if not ok:
        raise NotSinkOrSource(f"Vertex {vertex} is not a {direction}", vertex=vertex)

    arrows = []
    for a in Q.arrows:
        if vertex in (a.source, a.target):
            arrows.append(Arrow(label=star_label(a.label), source=a.target, target=a.source))
        else:
            arrows.append(a)
    labels = [a.label for a in arrows]
    if len(set(labels)) != len(labels):
        raise LabelCollision(f"Reflection at {vertex} produces duplicate labels", vertex=vertex)
    return Quiver(vertices=Q.vertices, arrows=tuple(arrows))
