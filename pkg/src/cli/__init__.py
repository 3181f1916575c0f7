"""Expression language and the skein command line."""

from src.cli.parser import Context, ParseError, evaluate, parse, parse_and_evaluate, render

__all__ = ["Context", "ParseError", "evaluate", "parse", "parse_and_evaluate", "render"]
