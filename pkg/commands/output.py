"""Output formatting and error mapping shared by the subcommands."""
import logging
import math
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import Enum
from typing import Any

import typer
from pydantic import BaseModel, ValidationError
from typer.core import TyperGroup

try:
    from typer._click import exceptions as click_exceptions
except ImportError:  # typer releases that still depend on click
    from click import exceptions as click_exceptions

from codec.models import EntropySeriesPayload
from series.base import EntropySeries
from spectral.errors import EntropyPerturbationError, MalformedInput

logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_DOMAIN_ERROR = 3


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


class LogBase(str, Enum):
    NATS = "nats"
    BITS = "bits"


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


@contextmanager
def cli_errors() -> Iterator[None]:
    """Map parse failures to exit 2 and domain errors to exit 3 with an ``ERROR <code>:`` line."""
    try:
        yield
    except (ValidationError, OSError, MalformedInput) as e:
        typer.echo(f"ERROR parse_error: {_one_line(e)}", err=True)
        raise typer.Exit(EXIT_PARSE_ERROR) from e
    except EntropyPerturbationError as e:
        logger.debug("domain error", exc_info=True)
        typer.echo(f"ERROR {e.code}: {_one_line(e)}", err=True)
        raise typer.Exit(EXIT_DOMAIN_ERROR) from e


class OneLineErrorGroup(TyperGroup):
    """Top-level group that reports usage errors as one ``ERROR usage_error:`` line."""

    def main(
        self,
        args: Sequence[str] | None = None,
        prog_name: str | None = None,
        complete_var: str | None = None,
        standalone_mode: bool = True,
        **extra: Any,
    ) -> Any:
        if not standalone_mode:
            return super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except getattr(click_exceptions, "NoArgsIsHelpError", ()) as e:
            e.show()
            sys.exit(e.exit_code)
        except click_exceptions.UsageError as e:
            typer.echo(f"ERROR usage_error: {_one_line(e.format_message())}", err=True)
            sys.exit(EXIT_PARSE_ERROR)
        except click_exceptions.ClickException as e:
            typer.echo(f"ERROR cli_error: {_one_line(e.format_message())}", err=True)
            sys.exit(e.exit_code)
        except click_exceptions.Abort:
            typer.echo("ERROR aborted", err=True)
            sys.exit(1)
        sys.exit(rv if isinstance(rv, int) else 0)


def parse_complex(text: str) -> complex:
    """'RE' or 'RE,IM' to a complex number."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise MalformedInput(f"expected RE or RE,IM, got {text!r}")


def fmt_float(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.17g}"


def series_payload(
    series: EntropySeries,
    base: LogBase,
    exact: float | None = None,
    eps: float | None = None,
) -> EntropySeriesPayload:
    """Series in the requested base, with the exact entropy and residual at ``eps`` when given."""
    scale = 1.0 if base is LogBase.NATS else 1.0 / math.log(2.0)
    payload = EntropySeriesPayload.from_series(series.scaled(scale), base=base.value)
    if exact is not None and eps is not None:
        payload.exact = exact * scale
        payload.residual = abs(exact - series.evaluate(eps)) * scale
    return payload


def emit_series(payload: EntropySeriesPayload, fmt: OutputFormat) -> None:
    match fmt:
        case OutputFormat.JSON:
            typer.echo(payload.model_dump_json(indent=2))
        case OutputFormat.CSV:
            lines = ["order,coefficient,method"]
            lines.append(f"0,{fmt_float(payload.s0)},exact")
            for k, (c, m) in enumerate(zip(payload.coeffs, payload.methods), start=1):
                lines.append(f"{k},{fmt_float(c)},{m.value}")
            if payload.exact is not None:
                lines.append(f"exact,{fmt_float(payload.exact)},")
                lines.append(f"residual,{fmt_float(payload.residual)},")
            typer.echo("\n".join(lines))
        case OutputFormat.TABLE:
            lines = [f"{'k':>3}  {'s_k (' + payload.base + ')':>24}  method"]
            lines.append(f"{0:>3}  {payload.s0:>24.12e}  exact")
            for k, (c, m) in enumerate(zip(payload.coeffs, payload.methods), start=1):
                lines.append(f"{k:>3}  {c:>24.12e}  {m.value}")
            if payload.exact is not None:
                lines.append(f"exact entropy {payload.exact:.12e}, residual {payload.residual:.3e}")
            lines.extend(f"note: {note}" for note in payload.notes)
            typer.echo("\n".join(lines))


def emit_rows(rows: Sequence[BaseModel], fmt: OutputFormat) -> None:
    """Report rows as a JSON array, CSV or an aligned table."""
    if fmt is OutputFormat.JSON:
        typer.echo("[" + ",\n".join(row.model_dump_json(indent=2) for row in rows) + "]")
        return
    if not rows:
        return
    fields = list(type(rows[0]).model_fields)
    if fmt is OutputFormat.CSV:
        lines = [",".join(fields)]
        for row in rows:
            values = row.model_dump()
            lines.append(",".join(fmt_float(values[f]) if isinstance(values[f], float) else str(values[f]) for f in fields))
    else:
        lines = ["  ".join(f"{f:>22}" for f in fields)]
        for row in rows:
            values = row.model_dump()
            lines.append(
                "  ".join(f"{values[f]:>22.12e}" if isinstance(values[f], float) else f"{values[f]!s:>22}" for f in fields)
            )
    typer.echo("\n".join(lines))
