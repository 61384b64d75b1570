"""Entropy Perturbation - Taylor series of von Neumann entropy around a base state.

Usage:
    uv run main.py example --name onemode-thermal --order 4
    entropy-perturb series --rho0 rho.json --H h.json --order 4
"""
import logging
import sys

import typer

from commands import register_convergence, register_example, register_series, register_validate
from commands.output import OneLineErrorGroup
from settings.config import get_settings

# Initialize settings at module level
settings = get_settings()

# Logs go to stderr so stdout stays machine-readable
logging.basicConfig(
    level=settings.log_level,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

app = typer.Typer(name="entropy-perturb", cls=OneLineErrorGroup, no_args_is_help=True, add_completion=False)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging")) -> None:
    """Perturbative entropy series, built-in examples and validation sweeps."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


register_series(app, settings)
register_example(app, settings)
register_validate(app, settings)
register_convergence(app, settings)


def run() -> None:
    app()


if __name__ == "__main__":
    run()
