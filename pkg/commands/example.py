"""example subcommand: the built-in thermal-state instances."""
import logging
from pathlib import Path
from typing import Annotated

import typer

from codec.models import load_fock_spec
from commands.instances import ExampleName, example_instance
from commands.output import LogBase, OutputFormat, cli_errors, emit_series, parse_complex, series_payload
from settings.config import Settings
from states.fock import FockStateSpec

logger = logging.getLogger(__name__)


def register_example(app: typer.Typer, settings: Settings) -> None:
    """Register the example command."""

    @app.command("example")
    def example(
        name: Annotated[ExampleName, typer.Option("--name")],
        v: Annotated[float, typer.Option("--v", help="Thermal ratio N/(N+1)")] = 0.5,
        alpha: Annotated[str, typer.Option("--alpha", help="RE or RE,IM")] = "1",
        dim: Annotated[int | None, typer.Option("--D", help="Fock cutoff per mode")] = None,
        spec: Annotated[Path | None, typer.Option("--spec", help="JSON {v, alpha: [re, im], D}; replaces --v, --alpha, --D")] = None,
        order: Annotated[int, typer.Option("--order", min=1)] = 4,
        exact_at: Annotated[float | None, typer.Option("--exact-at")] = None,
        quad_tol: Annotated[float | None, typer.Option("--quad-tol")] = None,
        fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
        base: Annotated[LogBase, typer.Option("--base")] = LogBase.NATS,
    ) -> None:
        """Series for onemode-thermal, twomode-thermal or displaced-thermal."""
        with cli_errors():
            if spec is not None:
                fs = load_fock_spec(spec)
            else:
                fs = FockStateSpec(v=v, alpha=parse_complex(alpha), D=dim)
            instance = example_instance(name, fs, settings)
            result = instance.series(order, quad_tol, settings)
            exact = instance.exact(exact_at) if exact_at is not None else None
            emit_series(series_payload(result, base, exact, exact_at), fmt)
