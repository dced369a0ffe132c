# routes package
# One module per subcommand; each exposes register(subparsers)

from . import apply, fit, info, select, variance

SUBCOMMANDS = [select, apply, variance, info, fit]

__all__ = ["SUBCOMMANDS"]
