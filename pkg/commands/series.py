"""series subcommand: Taylor coefficients for an instance read from JSON files."""
import logging
from pathlib import Path
from typing import Annotated

import typer

from commands.instances import file_instance
from commands.output import LogBase, OutputFormat, cli_errors, emit_series, series_payload
from settings.config import Settings

logger = logging.getLogger(__name__)


def register_series(app: typer.Typer, settings: Settings) -> None:
    """Register the series command."""

    @app.command("series")
    def series(
        rho0: Annotated[Path, typer.Option("--rho0", help="Base state, matrix JSON")],
        h: Annotated[Path | None, typer.Option("--H", help="First-order perturbation, matrix JSON")] = None,
        h2: Annotated[list[Path] | None, typer.Option("--H2", help="Higher-order terms H^(2), H^(3), ... in order")] = None,
        terms: Annotated[Path | None, typer.Option("--terms", help="All perturbation orders, {\"terms\": [...]}")] = None,
        order: Annotated[int, typer.Option("--order", min=1, help="Highest order K")] = 4,
        exact_at: Annotated[float | None, typer.Option("--exact-at", help="Also report exact entropy at this eps")] = None,
        trace_deficit: Annotated[float, typer.Option("--trace-deficit", min=0.0)] = 0.0,
        cluster_tol: Annotated[float | None, typer.Option("--cluster-tol", help="Absolute clustering gap")] = None,
        quad_tol: Annotated[float | None, typer.Option("--quad-tol", help="Quadrature relative tolerance")] = None,
        fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
        base: Annotated[LogBase, typer.Option("--base")] = LogBase.NATS,
    ) -> None:
        """Entropy Taylor coefficients s_0..s_K of rho_0 + eps H (+ eps^2 H2 ...)."""
        with cli_errors():
            instance = file_instance(rho0, h, h2, terms, settings, trace_deficit)
            result = instance.series(order, quad_tol, settings, cluster_tol=cluster_tol)
            exact = instance.exact(exact_at) if exact_at is not None else None
            emit_series(series_payload(result, base, exact, exact_at), fmt)
