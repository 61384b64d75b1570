"""convergence subcommand: exact entropy against the truncated series over an eps sweep."""
import logging
from pathlib import Path
from typing import Annotated

import typer

from codec.models import ConvergenceRowPayload
from commands.instances import ExampleName, resolve_instance
from commands.output import OutputFormat, cli_errors, emit_rows, parse_complex
from oracle.crosscheck import convergence_sweep, geometric_steps
from settings.config import Settings
from states.fock import FockStateSpec

logger = logging.getLogger(__name__)


def register_convergence(app: typer.Typer, settings: Settings) -> None:
    """Register the convergence command."""

    @app.command("convergence")
    def convergence(
        name: Annotated[ExampleName | None, typer.Option("--name")] = None,
        rho0: Annotated[Path | None, typer.Option("--rho0")] = None,
        h: Annotated[Path | None, typer.Option("--H")] = None,
        v: Annotated[float, typer.Option("--v")] = 0.5,
        alpha: Annotated[str, typer.Option("--alpha")] = "1",
        dim: Annotated[int | None, typer.Option("--D")] = None,
        order: Annotated[int, typer.Option("--order", min=1)] = 4,
        eps_start: Annotated[float, typer.Option("--eps-start")] = 1e-1,
        eps_stop: Annotated[float, typer.Option("--eps-stop")] = 1e-3,
        steps: Annotated[int, typer.Option("--steps", min=2)] = 8,
        quad_tol: Annotated[float | None, typer.Option("--quad-tol")] = None,
        fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.CSV,
    ) -> None:
        """Rows (eps, S_exact, S_series, residual) on a geometric eps grid."""
        with cli_errors():
            fs = FockStateSpec(v=v, alpha=parse_complex(alpha), D=dim)
            instance = resolve_instance(name, fs, rho0, h, settings)
            result = instance.series(order, quad_tol, settings)
            rows = convergence_sweep(instance.rho0, instance.ps, result, geometric_steps(eps_start, eps_stop, steps))
        emit_rows([ConvergenceRowPayload.from_row(r) for r in rows], fmt)
