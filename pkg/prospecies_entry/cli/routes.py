# ============================================================================
# FILE: prospecies_entry/cli/routes.py
# ============================================================================
"""Main command group"""

from typing import Optional

import click

from prospecies_entry import init_runtime
from prospecies_entry.core.config import settings
from prospecies_entry.cli.commands import algebra, checks, reflection, separated
from prospecies_entry.cli.runner import CommandContext


@click.group(name=settings.CLI_NAME)
@click.version_option(settings.CLI_VERSION, prog_name=settings.CLI_NAME)
@click.option('--seed', type=int, default=None, help="Sampling seed (default: PROSPECIES_SEED)")
@click.option('--json', 'as_json', is_flag=True, help="Print the report as JSON")
@click.pass_context
def cli(ctx: click.Context, seed: Optional[int], as_json: bool):
    """Exact computations with pro-species of algebras"""
    init_runtime(seed)
    ctx.obj = CommandContext(as_json=as_json)


# Include every command group
for group in (algebra, checks, reflection, separated):
    for command in group.commands:
        cli.add_command(command)
