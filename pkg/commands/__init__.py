"""CLI subcommands."""
from commands.convergence import register_convergence
from commands.example import register_example
from commands.series import register_series
from commands.validate import register_validate

__all__ = [
    "register_convergence",
    "register_example",
    "register_series",
    "register_validate",
]
