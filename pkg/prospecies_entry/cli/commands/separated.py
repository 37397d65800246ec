# ============================================================================
# FILE: prospecies_entry/cli/commands/separated.py
# ============================================================================
"""separate, stable-hom and split: the radical-square-zero algebra Γ and Λ^s"""

import logging

import click

from prospecies_entry.engine.prospecies import ProSpecies, module_to_rep, tensor_algebra
from prospecies_entry.engine.separated import epi_projective_split, gamma_algebra, separation_report, stable_hom_pair
from prospecies_entry.cli.runner import run_command
from prospecies_entry.utils.module_specs import build_module

logger = logging.getLogger(__name__)

INSTANCE = click.argument('instance', type=click.Path(exists=True, dir_okay=False))


@click.command('separate')
@INSTANCE
@click.option('--module', 'spec', default='regular', show_default=True, help="Module over Γ")
@click.pass_context
def separate_command(ctx: click.Context, instance: str, spec: str):
    """F(M) on the separated pro-species"""
    def compute(Lam: ProSpecies):
        G = gamma_algebra(Lam)
        report = separation_report(G, build_module(G.algebra, spec))
        text = (f"Γ: dim {report.gamma_dimension}\n"
                f"F({spec}): {report.dimension_vector}\n"
                f"in rep^epi: {str(report.in_rep_epi).lower()}")
        return report, text, {"module": spec}

    run_command(ctx, 'separate', instance, compute)


@click.command('stable-hom')
@INSTANCE
@click.option('--module', 'spec', default='regular', show_default=True, help="First module over Γ")
@click.option('--other', 'other', default='regular', show_default=True, help="Second module over Γ")
@click.pass_context
def stable_hom_command(ctx: click.Context, instance: str, spec: str, other: str):
    """Stable Hom over Γ against stable Hom of the separated images"""
    def compute(Lam: ProSpecies):
        G = gamma_algebra(Lam)
        over_gamma, over_separated = stable_hom_pair(G, build_module(G.algebra, spec), build_module(G.algebra, other))
        result = {"gamma": over_gamma, "separated": over_separated, "equal": over_gamma == over_separated}
        text = f"stable Hom: Γ {over_gamma}, T(Λ^s) {over_separated}"
        return result, text, {"modules": [spec, other]}

    run_command(ctx, 'stable-hom', instance, compute)


@click.command('split')
@INSTANCE
@click.option('--module', 'spec', default='regular', show_default=True, help="Module over T(Λ)")
@click.pass_context
def split_command(ctx: click.Context, instance: str, spec: str):
    """M ≅ X ⊕ N with X in rep^epi and N projective at sinks"""
    def compute(Lam: ProSpecies):
        T = tensor_algebra(Lam)
        split = epi_projective_split(T, module_to_rep(T, build_module(T.algebra, spec, T)))
        result = {
            "epi_part": split.epi_part.dimension_vector(),
            "complement": split.complement.dimension_vector(),
            "summands": [v for v, _ in split.summands],
            "certified": split.certified,
        }
        text = f"X = {result['epi_part']}, N = {result['complement']}, certified: {str(split.certified).lower()}"
        return result, text, {"module": spec}

    run_command(ctx, 'split', instance, compute)


commands = [separate_command, stable_hom_command, split_command]
