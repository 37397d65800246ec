# ============================================================================
# FILE: prospecies_entry/cli/commands/checks.py
# ============================================================================
"""check dualisable | locally-projective | gorenstein | gp"""

from typing import Optional
import logging

import click

from prospecies_entry.engine.preprojective import is_dualisable
from prospecies_entry.engine.prospecies import (
    ProSpecies, gorenstein_conditions, is_gorenstein_projective, is_locally_projective, module_to_rep, tensor_algebra,
)
from prospecies_entry.cli.runner import run_command
from prospecies_entry.utils.module_specs import build_module

logger = logging.getLogger(__name__)

INSTANCE = click.argument('instance', type=click.Path(exists=True, dir_okay=False))
MODULE = click.option('--module', 'spec', default='regular', show_default=True, help="Module over T(Λ)")


@click.group('check')
def check():
    """Boolean checks with certificates"""


@check.command('dualisable')
@INSTANCE
@click.pass_context
def dualisable_command(ctx: click.Context, instance: str):
    """Right and left duals of every arrow bimodule isomorphic"""
    def compute(Lam: ProSpecies):
        report = is_dualisable(Lam).report()
        lines = [f"dualisable: {str(report.dualisable).lower()}"]
        lines += [f"  {a}: {v.value}" for a, v in report.arrows.items()]
        return report, "\n".join(lines), {"convention": report.convention}

    run_command(ctx, 'check dualisable', instance, compute)


@check.command('locally-projective')
@INSTANCE
@MODULE
@click.pass_context
def locally_projective_command(ctx: click.Context, instance: str, spec: str):
    """Every vertex component of the module projective over Λ_i"""
    def compute(Lam: ProSpecies):
        T = tensor_algebra(Lam)
        rep = module_to_rep(T, build_module(T.algebra, spec, T))
        verdict = is_locally_projective(rep)
        result = {"locally_projective": verdict, "dimension_vector": rep.dimension_vector()}
        return result, f"locally projective: {str(verdict).lower()}", {"module": spec}

    run_command(ctx, 'check locally-projective', instance, compute)


@check.command('gorenstein')
@INSTANCE
@click.option('--n', 'n', type=int, default=0, show_default=True, help="Local Gorenstein dimension n")
@click.option('--bound', type=int, default=None, help="Resolution bound for the finiteness conditions")
@MODULE
@click.pass_context
def gorenstein_command(ctx: click.Context, instance: str, n: int, bound: Optional[int], spec: str):
    """The six Gorenstein conditions on one module"""
    def compute(Lam: ProSpecies):
        T = tensor_algebra(Lam)
        report = gorenstein_conditions(T, n, build_module(T.algebra, spec, T), bound)
        flags = " ".join("1" if c else "0" for c in report.conditions)
        text = (f"gorenstein conditions: {flags}\n"
                f"injdim T(Λ) <= {n + 1}: {str(report.injective_dimension_bound_met).lower()}")
        return report, text, {"module": spec}

    run_command(ctx, 'check gorenstein', instance, compute)


@check.command('gp')
@INSTANCE
@MODULE
@click.pass_context
def gp_command(ctx: click.Context, instance: str, spec: str):
    """Gorenstein projectivity through the vertex-local criterion"""
    def compute(Lam: ProSpecies):
        T = tensor_algebra(Lam)
        verdict = is_gorenstein_projective(T, build_module(T.algebra, spec, T))
        return {"gorenstein_projective": verdict.value}, f"gorenstein projective: {verdict.value}", {"module": spec}

    run_command(ctx, 'check gp', instance, compute)


commands = [check]
