# ============================================================================
# FILE: prospecies_entry/cli/commands/reflection.py
# ============================================================================
"""reflect: Σ± on Π-modules and the BGP functors on representations"""

from typing import Optional
import logging

import click

from prospecies_entry.core.config import settings
from prospecies_entry.engine.preprojective import preprojective_algebra
from prospecies_entry.engine.prospecies import ProSpecies, module_to_rep, tensor_algebra
from prospecies_entry.engine.reflection import (
    bgp_minus, bgp_plus, pi_module_to_rep, sigma_module, verify_reflection_sequences,
)
from prospecies_entry.cli.runner import run_command
from prospecies_entry.schemas.reports import ReflectionReport
from prospecies_entry.utils.module_specs import build_module
from prospecies_entry.utils.validators import validate_direction, validate_truncation

logger = logging.getLogger(__name__)


@click.command('reflect')
@click.argument('instance', type=click.Path(exists=True, dir_okay=False))
@click.option('--vertex', required=True, help="Vertex of the quiver")
@click.option('--dir', 'direction', required=True, help="+ or -")
@click.option('--functor', type=click.Choice(['sigma', 'bgp']), default='sigma', show_default=True,
              help="sigma: Σ± on a Π-module; bgp: F+ at a sink or F- at a source")
@click.option('--module', 'spec', default='regular', show_default=True,
              help="Module over Π(Λ) (sigma) or T(Λ) (bgp)")
@click.option('--truncate', 'truncation', type=int, default=None, help="Truncation degree for Π(Λ)")
@click.pass_context
def reflect_command(ctx: click.Context, instance: str, vertex: str, direction: str, functor: str,
                    spec: str, truncation: Optional[int]):
    """Reflect a module at a vertex"""
    ok, message = validate_direction(direction)
    if not ok:
        raise click.BadParameter(message, param_hint='--dir')
    N = settings.TRUNCATION_DEGREE if truncation is None else truncation
    ok, message = validate_truncation(N)
    if not ok:
        raise click.BadParameter(message, param_hint='--truncate')

    def compute(Lam: ProSpecies):
        if functor == 'sigma':
            Pi = preprojective_algebra(Lam, N)
            V = build_module(Pi.algebra, spec)
            rep = pi_module_to_rep(Pi, V)
            after = pi_module_to_rep(Pi, sigma_module(Pi, V, vertex, direction))
            sequences = verify_reflection_sequences(rep, vertex)
            report = ReflectionReport(
                vertex=vertex, direction=direction, functor=f"Σ{direction}",
                before=rep.dimension_vector(), after=after.dimension_vector(),
                sequences_exact=sequences.first_exact and sequences.second_exact,
            )
            metadata = {"finite_certified": Pi.finite_certified, "truncation": N}
        else:
            T = tensor_algebra(Lam)
            rep = module_to_rep(T, build_module(T.algebra, spec, T))
            out = bgp_plus(Lam, rep, vertex) if direction == '+' else bgp_minus(Lam, rep, vertex)
            report = ReflectionReport(
                vertex=vertex, direction=direction, functor=f"F{direction}",
                before=rep.dimension_vector(), after=out.dimension_vector(),
            )
            metadata = {"reflected": out.prospecies.name}
        text = f"{report.functor}[{vertex}]({spec}): {report.before} -> {report.after}"
        if report.sequences_exact is not None:
            text += f"\nsequences exact: {str(report.sequences_exact).lower()}"
        return report, text, {"module": spec, **metadata}

    run_command(ctx, 'reflect', instance, compute)


commands = [reflect_command]
