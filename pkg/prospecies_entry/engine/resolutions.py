# ============================================================================
# FILE: prospecies_entry/engine/resolutions.py
# ============================================================================
"""Minimal projective resolutions and homological dimensions"""

from typing import List, Optional
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.engine.algebra import Algebra
from prospecies_entry.engine.exactla import Matrix
from prospecies_entry.engine.modules import Module, ProjectiveCover, hom_space, projective_cover
from prospecies_entry.schemas.reports import Dimension

logger = logging.getLogger(__name__)


class ProjectiveResolution:
    """P_k → … → P_0 → M with syzygies Ω^{k+1} = ker(P_k → Ω^k)

    differentials[k-1] is P_k → P_{k-1}; inclusions[k] embeds Ω^{k+1} in P_k.
    """

    def __init__(self, module: Module):
        self.module = module
        self.covers: List[ProjectiveCover] = []
        self.syzygies: List[Module] = []
        self.inclusions: List[Matrix] = []
        self.differentials: List[Matrix] = []

    @property
    def length(self) -> int:
        return len(self.covers)

    def terms(self) -> List[List[str]]:
        labels = self.module.algebra.idempotent_labels
        return [[labels[a] for a in c.summands] for c in self.covers]

    def is_complex(self) -> bool:
        """Consecutive differentials compose to zero"""
        return all((d1 @ d2).is_zero() for d1, d2 in zip(self.differentials, self.differentials[1:]))


def minimal_projective_resolution(M: Module, length: int) -> ProjectiveResolution:
    """Iterated projective covers; stops early once a syzygy vanishes"""
    res = ProjectiveResolution(M)
    current = M
    previous_inclusion: Optional[Matrix] = None
    for k in range(length + 1):
        cover = projective_cover(current)
        res.covers.append(cover)
        if previous_inclusion is not None:
            res.differentials.append(previous_inclusion @ cover.matrix)
        K, inc = cover.kernel()
        res.syzygies.append(K)
        res.inclusions.append(inc)
        logger.debug(f"Resolution of {M.name}: P_{k} has {len(cover.summands)} summands, syzygy dim {K.dim}")
        if K.dim == 0:
            break
        current, previous_inclusion = K, inc
    return res


def proj_dim(M: Module, bound: Optional[int] = None) -> Dimension:
    """Exact projective dimension if ≤ bound, else at least bound + 1"""
    bound = settings.RESOLUTION_BOUND if bound is None else bound
    current = M
    for k in range(bound + 1):
        cover = projective_cover(current)
        if cover.projective.dim == current.dim:
            return Dimension(value=k)
        current, _ = cover.kernel()
    return Dimension(value=bound + 1, exact=False)


def dual_module(M: Module) -> Module:
    """D(M) over the opposite algebra"""
    return M.dual()


def opposite_algebra(A: Algebra) -> Algebra:
    return A.opposite()


def inj_dim(M: Module, bound: Optional[int] = None) -> Dimension:
    """Injective dimension as the projective dimension of D(M) over A^op"""
    return proj_dim(M.dual(), bound)


def is_selfinjective(A: Algebra) -> bool:
    return inj_dim(Module.regular(A), 0).at_most(0)


def injective_cogenerator(A: Algebra) -> Module:
    """D(A) as a left A-module"""
    return Module.regular(A.opposite()).dual()


def is_iwanaga_gorenstein(A: Algebra, n: int) -> bool:
    """injdim A ≤ n and projdim D(A) ≤ n"""
    return inj_dim(Module.regular(A), n).at_most(n) and proj_dim(injective_cogenerator(A), n).at_most(n)


def gorenstein_dimension(A: Algebra, bound: Optional[int] = None) -> Dimension:
    """max(injdim of A on both sides)"""
    left = inj_dim(Module.regular(A), bound)
    right = inj_dim(Module.regular(A.opposite()), bound)
    if left.exact and right.exact:
        return Dimension(value=max(left.value, right.value))
    return Dimension(value=max(left.value, right.value), exact=False)


def ext_dim(C: Module, Y: Module, k: int) -> int:
    """dim Ext^k(C, Y) = dim Hom(Ω^k C, Y) − rank of the restrictions from P_{k-1}"""
    if k == 0:
        return len(hom_space(C, Y))
    res = minimal_projective_resolution(C, k - 1)
    if len(res.syzygies) < k:
        return 0
    omega = res.syzygies[k - 1]
    if omega.dim == 0:
        return 0
    H = hom_space(omega, Y)
    if not H:
        return 0
    inc = res.inclusions[k - 1]
    restrictions = [(h @ inc).flatten() for h in hom_space(res.covers[k - 1].projective, Y)]
    if not restrictions:
        return len(H)
    return len(H) - Matrix.from_columns(C.field, restrictions, Y.dim * omega.dim).rank()
