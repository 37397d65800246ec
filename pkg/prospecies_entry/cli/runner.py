# ============================================================================
# FILE: prospecies_entry/cli/runner.py
# ============================================================================
"""Shared command plumbing: load the instance, run, print, map errors to exit codes"""

import json
from typing import Any, Callable, Dict, Optional, Tuple
import logging

import click
from pydantic import BaseModel

from prospecies_entry.core.dependencies import get_seed
from prospecies_entry.core.errors import ProSpeciesError
from prospecies_entry.engine.prospecies import ProSpecies
from prospecies_entry.schemas.reports import CommandReport
from prospecies_entry.utils.dsl import instance_hash, parse_instance

logger = logging.getLogger(__name__)

# result payload, plain-text rendering, extra metadata
CommandOutput = Tuple[Any, str, Dict[str, Any]]


class CommandContext:
    """Options of the top-level group, shared by every command"""

    def __init__(self, as_json: bool = False):
        self.as_json = as_json


def _payload(result: Any) -> Any:
    if isinstance(result, BaseModel):
        return result.model_dump(mode='json')
    if isinstance(result, list):
        return [_payload(r) for r in result]
    if isinstance(result, dict):
        return {k: _payload(v) for k, v in result.items()}
    return result


def run_command(ctx: click.Context, command: str, instance: str,
                compute: Callable[[ProSpecies], CommandOutput]) -> Optional[CommandReport]:
    """Parse the instance file, run compute on it and print the report

    Args:
        ctx: Click context; ctx.obj is the CommandContext
        command: Command name recorded in the report
        instance: Path to the .prosp file
        compute: Takes the pro-species, returns (result, text, metadata)

    Returns:
        The report, or None after an error (the process exits with its code)
    """
    options: CommandContext = ctx.obj or CommandContext()
    with open(instance, encoding='utf-8') as handle:
        text = handle.read()
    try:
        Lam = parse_instance(text)
        result, rendered, metadata = compute(Lam)
    except ProSpeciesError as e:
        logger.error(f"{command} failed: {e.message}")
        if options.as_json:
            click.echo(json.dumps({"command": command, "instance_hash": instance_hash(text), **e.to_dict()},
                                  ensure_ascii=False, indent=2))
        else:
            click.echo(f"Error ({e.__class__.__name__}): {e.message}", err=True)
        ctx.exit(e.exit_code)
        return None

    report = CommandReport(
        command=command,
        instance_hash=instance_hash(text),
        field=Lam.field.label,
        seed=get_seed(),
        result=_payload(result),
        metadata=metadata,
    )
    if options.as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(rendered.rstrip("\n"))
    logger.debug(f"✓ {command} finished")
    return report
