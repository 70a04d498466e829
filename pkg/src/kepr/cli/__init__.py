"""Command-line surface."""

from kepr.cli.commands import HANDLERS
from kepr.cli.parser import KeprArgumentParser, build_parser

__all__ = ["HANDLERS", "KeprArgumentParser", "build_parser"]
