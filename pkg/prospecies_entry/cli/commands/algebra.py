# ============================================================================
# FILE: prospecies_entry/cli/commands/algebra.py
# ============================================================================
"""Algebra commands: tensor-algebra, present, present-pi, preprojective, valuation, resolve"""

from typing import List, Optional
import logging

import click

from prospecies_entry.core.config import settings
from prospecies_entry.core.errors import DomainError
from prospecies_entry.engine.algebra import bound_quiver_algebra, cartan_matrix
from prospecies_entry.engine.preprojective import preprojective_algebra
from prospecies_entry.engine.presentation import (
    certify_tensor_presentation, present_preprojective, present_tensor_algebra, presentation_graded_dimensions,
)
from prospecies_entry.engine.prospecies import ProSpecies, path_dimension_oracle, tensor_algebra, valuation
from prospecies_entry.engine.quiver import is_acyclic
from prospecies_entry.engine.resolutions import minimal_projective_resolution, proj_dim
from prospecies_entry.cli.runner import run_command
from prospecies_entry.schemas.presentation import Presentation, PresentationReport
from prospecies_entry.schemas.reports import AlgebraSummary, ResolutionReport
from prospecies_entry.utils.dsl import render_presentation
from prospecies_entry.utils.module_specs import build_module
from prospecies_entry.utils.validators import validate_truncation

logger = logging.getLogger(__name__)

INSTANCE = click.argument('instance', type=click.Path(exists=True, dir_okay=False))


def _presentation_report(P: Presentation, rebuilt_dimension: Optional[int] = None,
                         graded: Optional[List[int]] = None, certified: Optional[bool] = None) -> PresentationReport:
    return PresentationReport(
        name=P.name,
        vertices=len(P.quiver.vertices),
        arrows=len(P.quiver.arrows),
        relations=len(P.relations),
        text=render_presentation(P),
        rebuilt_dimension=rebuilt_dimension,
        graded_dimensions=graded,
        certified=certified,
    )


# ==================== TENSOR ALGEBRA ====================

@click.command('tensor-algebra')
@INSTANCE
@click.pass_context
def tensor_algebra_command(ctx: click.Context, instance: str):
    """Dimension, grading and Cartan matrix of T(Λ)"""
    def compute(Lam: ProSpecies):
        T = tensor_algebra(Lam)
        oracle = path_dimension_oracle(Lam)
        if oracle != T.dim:
            raise DomainError(f"Path enumeration gives dim {oracle}, the multiplication table {T.dim}")
        summary = AlgebraSummary(
            name=T.algebra.name,
            dimension=T.dim,
            graded_dimensions=T.graded_dimensions(),
            cartan_matrix=cartan_matrix(T.algebra),
            basis=list(T.algebra.labels),
        )
        text = f"{summary.name}: dim {summary.dimension}, graded {summary.graded_dimensions}"
        return summary, text, {"path_oracle_dimension": oracle}

    run_command(ctx, 'tensor-algebra', instance, compute)


# ==================== PRESENTATIONS ====================

@click.command('present')
@INSTANCE
@click.option('--certify/--no-certify', default=True, help="Check the generator map onto T(Λ)")
@click.pass_context
def present_command(ctx: click.Context, instance: str, certify: bool):
    """Quiver with relations for T(Λ)"""
    def compute(Lam: ProSpecies):
        P = present_tensor_algebra(Lam)
        rebuilt = None
        certified = None
        if is_acyclic(Lam.quiver):
            rebuilt = bound_quiver_algebra(P.bound_quiver(), Lam.field, name=P.name).dim
            if certify:
                certified = certify_tensor_presentation(Lam, P).certified
        report = _presentation_report(P, rebuilt_dimension=rebuilt, certified=certified)
        return report, report.text, {}

    run_command(ctx, 'present', instance, compute)


@click.command('present-pi')
@INSTANCE
@click.option('--check-degree', type=int, default=None,
              help="Compare graded dimensions with Π(Λ) up to this degree")
@click.pass_context
def present_pi_command(ctx: click.Context, instance: str, check_degree: Optional[int]):
    """Quiver with relations for Π(Λ)"""
    degree = settings.PRESENTATION_CHECK_DEGREE if check_degree is None else check_degree

    def compute(Lam: ProSpecies):
        P = present_preprojective(Lam, check_degree=degree)
        graded = None
        if degree >= 2:
            rebuilt = bound_quiver_algebra(P.bound_quiver(max_weight=degree), Lam.field, name=P.name)
            graded = presentation_graded_dimensions(P, rebuilt)
        report = _presentation_report(P, graded=graded, certified=degree >= 2)
        return report, report.text, {"check_degree": degree}

    run_command(ctx, 'present-pi', instance, compute)


# ==================== PREPROJECTIVE ====================

@click.command('preprojective')
@INSTANCE
@click.option('--truncate', 'truncation', type=int, default=None, help="Truncation degree N")
@click.pass_context
def preprojective_command(ctx: click.Context, instance: str, truncation: Optional[int]):
    """Graded dimensions of Π(Λ) up to degree N"""
    N = settings.TRUNCATION_DEGREE if truncation is None else truncation
    ok, message = validate_truncation(N)
    if not ok:
        raise click.BadParameter(message, param_hint='--truncate')

    def compute(Lam: ProSpecies):
        Pi = preprojective_algebra(Lam, N)
        summary = Pi.summary()
        status = "finite_certified" if Pi.finite_certified else "truncated"
        text = f"{summary.name}: dim {summary.dimension}, graded {summary.graded_dimensions}, {status}"
        return summary, text, {"casimir_convention": Pi.doubled.certificate.report().convention}

    run_command(ctx, 'preprojective', instance, compute)


# ==================== VALUATION / RESOLUTIONS ====================

@click.command('valuation')
@INSTANCE
@click.pass_context
def valuation_command(ctx: click.Context, instance: str):
    """c_i = dim Λ_i and the free ranks of each arrow bimodule"""
    def compute(Lam: ProSpecies):
        report = valuation(Lam)
        lines = [f"c[{v}] = {c}" for v, c in report.vertex_dimensions.items()]
        lines += [f"{a}: ({r}, {l})" for a, (r, l) in report.arrow_ranks.items()]
        return report, "\n".join(lines), {}

    run_command(ctx, 'valuation', instance, compute)


@click.command('resolve')
@INSTANCE
@click.option('--length', type=int, default=None, help="Number of projective terms to compute")
@click.option('--module', 'spec', default=None,
              help="Module over T(Λ); default: every Λ_i as a T(Λ)-module")
@click.pass_context
def resolve_command(ctx: click.Context, instance: str, length: Optional[int], spec: Optional[str]):
    """Minimal projective resolutions over T(Λ)"""
    L = settings.RESOLUTION_BOUND if length is None else length

    def compute(Lam: ProSpecies):
        T = tensor_algebra(Lam)
        specs = [spec] if spec else [f"local:{v}" for v in Lam.quiver.vertices]
        reports, lines = [], []
        for s in specs:
            M = build_module(T.algebra, s, T)
            res = minimal_projective_resolution(M, L)
            pd = proj_dim(M, L)
            reports.append(ResolutionReport(
                terms=res.terms(),
                syzygy_dimensions=[K.dim for K in res.syzygies],
                projective_dimension=pd,
            ))
            lines.append(f"{s}: pd {pd.render()}, terms {res.terms()}")
        return reports, "\n".join(lines), {"length": L, "modules": specs}

    run_command(ctx, 'resolve', instance, compute)


commands = [
    tensor_algebra_command,
    present_command,
    present_pi_command,
    preprojective_command,
    valuation_command,
    resolve_command,
]
