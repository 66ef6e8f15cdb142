"""Command-line interface for firecast.

The main entry point is the ``firecast`` click group in ``firecast.cli.commands``.
"""

from firecast.cli.commands import main

__all__ = ["main"]
