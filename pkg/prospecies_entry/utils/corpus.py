# ============================================================================
# FILE: prospecies_entry/utils/corpus.py
# ============================================================================
"""Seeded random instances and random modules

Instances are written in .prosp syntax and go through the parser, so every
generated pro-species is also a valid instance file. Vertex algebras are drawn
from k, k[x]/(x²) and kA₂; arrow bimodules from regular, gls and free presented
bimodules, all projective on both sides.
"""

from random import Random
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.dependencies import get_seed
from prospecies_entry.engine.algebra import Algebra
from prospecies_entry.engine.modules import Module, indecomposable_projective
from prospecies_entry.engine.prospecies import ProSpecies
from prospecies_entry.utils.dsl import parse_instance

logger = logging.getLogger(__name__)

VERTEX_KINDS = ('k', 'dual', 'a2')
SELFINJECTIVE_KINDS = ('k', 'dual')
ARROW_PROBABILITY = 0.5


def _algebra_block(vertex: str, kind: str) -> str:
    if kind == 'dual':
        return f"algebra {vertex} {{\n  quiver {{ vertex a; arrow x: a -> a; }}\n  relations {{ x.x; }}\n}}\n"
    if kind == 'a2':
        return f"algebra {vertex} {{\n  quiver {{ vertex a b; arrow y: a -> b; }}\n}}\n"
    return ""


def _inner_vertices(vertex: str, kind: str) -> List[str]:
    if kind == 'k':
        return [vertex]
    return ['a'] if kind == 'dual' else ['a', 'b']


def _bimodule_block(rng: Random, arrow: str, source: str, target: str, kinds: Dict[str, str]) -> str:
    s, t = kinds[source], kinds[target]
    choices = ['presented']
    if s == t:
        choices.append('regular')
    if s == t == 'dual':
        choices.append('gls')
    kind = rng.choice(choices)
    if kind == 'regular':
        body = "kind: regular;"
    elif kind == 'gls':
        body = "kind: gls(2, 2, 1, 1, 1);"
    else:
        out = rng.choice(_inner_vertices(target, t))
        inn = rng.choice(_inner_vertices(source, s))
        body = f"kind: presented {{ summands: ({out}, {inn}); }}"
    return f"bimodule {arrow} {{ {body} }}\n"


def random_instance_text(rng: Random, max_vertices: int = 4, kinds: Sequence[str] = VERTEX_KINDS,
                         field: str = "Q") -> str:
    """An acyclic instance: arrows only run from lower to higher vertex numbers"""
    n = rng.randint(1, max_vertices)
    vertices = [str(i + 1) for i in range(n)]
    vertex_kinds = {v: rng.choice(list(kinds)) for v in vertices}
    arrows: List[Tuple[str, str, str]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < ARROW_PROBABILITY:
                arrows.append((f"alpha{len(arrows)}", vertices[i], vertices[j]))
    arrow_text = "".join(f"arrow {a}: {s} -> {t}; " for a, s, t in arrows)
    text = f"field {field};\nquiver {{ vertex {' '.join(vertices)}; {arrow_text}}}\n"
    text += "".join(_algebra_block(v, vertex_kinds[v]) for v in vertices)
    text += "".join(_bimodule_block(rng, a, s, t, vertex_kinds) for a, s, t in arrows)
    return text


def random_instance(rng: Random, max_vertices: int = 4, kinds: Sequence[str] = VERTEX_KINDS) -> Tuple[str, ProSpecies]:
    text = random_instance_text(rng, max_vertices, kinds)
    return text, parse_instance(text)


def instance_corpus(count: int, max_vertices: int = 4, kinds: Sequence[str] = VERTEX_KINDS,
                    seed: Optional[int] = None) -> List[Tuple[str, ProSpecies]]:
    """count instances drawn from the runtime seed unless one is given"""
    rng = Random(get_seed() if seed is None else seed)
    corpus = [random_instance(rng, max_vertices, kinds) for _ in range(count)]
    logger.info(f"✓ Instance corpus: {count} instances, at most {max_vertices} vertices")
    return corpus


def random_module(rng: Random, A: Algebra, name: str = "M") -> Module:
    """A random submodule or quotient of a sum of one or two indecomposable projectives"""
    field = A.field
    parts = [indecomposable_projective(A, rng.randrange(len(A.idempotents)))[0] for _ in range(rng.randint(1, 2))]
    P = parts[0].direct_sum(*parts[1:])
    vectors = [
        [field.random_element(rng, settings.RANDOM_COEFFICIENT_RANGE) if rng.random() < 0.5 else field.zero()
         for _ in range(P.dim)]
        for _ in range(rng.randint(1, 2))
    ]
    if rng.random() < 0.5:
        M, _ = P.submodule(vectors)
    else:
        M, _ = P.quotient(vectors)
    if M.dim == 0:
        M = P
    M.name = name
    return M


def module_corpus(A: Algebra, count: int, seed: Optional[int] = None) -> List[Module]:
    rng = Random(get_seed() if seed is None else seed)
    return [random_module(rng, A, name=f"M{k}") for k in range(count)]
