"""validate subcommand: closed forms against quadrature and finite differences."""
import logging
from pathlib import Path
from typing import Annotated

import typer

from codec.models import CrosscheckRowPayload, TriangleReportPayload, ValidationReportPayload
from commands.instances import ExampleName, resolve_instance
from commands.output import EXIT_CHECK_FAILED, OutputFormat, cli_errors, emit_rows, parse_complex
from oracle.crosscheck import oracle_triangle, quadrature_crosscheck
from settings.config import Settings
from spectral.errors import InvalidArgument, MalformedInput
from states.fock import FockStateSpec

logger = logging.getLogger(__name__)


def _parse_orders(text: str) -> list[int]:
    try:
        return sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError as e:
        raise MalformedInput(f"--orders: expected comma-separated integers, got {text!r}") from e


def register_validate(app: typer.Typer, settings: Settings) -> None:
    """Register the validate command."""

    @app.command("validate")
    def validate(
        name: Annotated[ExampleName | None, typer.Option("--name")] = None,
        rho0: Annotated[Path | None, typer.Option("--rho0")] = None,
        h: Annotated[Path | None, typer.Option("--H")] = None,
        v: Annotated[float, typer.Option("--v")] = 0.5,
        alpha: Annotated[str, typer.Option("--alpha")] = "1",
        dim: Annotated[int | None, typer.Option("--D")] = None,
        orders: Annotated[str, typer.Option("--orders", help="Comma-separated orders in 2..4")] = "2,3,4",
        triangle_order: Annotated[int | None, typer.Option("--triangle-order", help="Also run finite differences")] = None,
        eps: Annotated[float | None, typer.Option("--eps", help="Finite-difference base step")] = None,
        tol: Annotated[float, typer.Option("--tol", help="Closed form vs quadrature bound")] = 1e-8,
        fd_tol: Annotated[float, typer.Option("--fd-tol", help="Bound involving finite differences")] = 1e-6,
        quad_tol: Annotated[float | None, typer.Option("--quad-tol")] = None,
        fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
    ) -> None:
        """Cross-check the closed forms; exits 1 when a bound is violated."""
        with cli_errors():
            requested = _parse_orders(orders)
            fs = FockStateSpec(v=v, alpha=parse_complex(alpha), D=dim)
            instance = resolve_instance(name, fs, rho0, h, settings)
            if instance.multi:
                raise InvalidArgument("validate: needs a single perturbation order")
            H = instance.ps.terms[0]
            rows = quadrature_crosscheck(instance.rho0, H, requested, quad_tol, settings)
            report = ValidationReportPayload(crosscheck=[CrosscheckRowPayload.from_row(r) for r in rows])
            report.passed = all(r.difference <= tol for r in rows)
            if triangle_order is not None:
                triangle = oracle_triangle(instance.rho0, H, triangle_order, eps0=eps, settings=settings)
                report.triangle = TriangleReportPayload.from_report(triangle)
                report.passed = report.passed and triangle.max_disagreement <= fd_tol

        if fmt is OutputFormat.JSON:
            typer.echo(report.model_dump_json(indent=2))
        else:
            emit_rows(report.crosscheck, fmt)
            if report.triangle is not None:
                emit_rows([report.triangle], fmt)
        if not report.passed:
            logger.warning("validate: a cross-check exceeded its bound")
            raise typer.Exit(EXIT_CHECK_FAILED)
