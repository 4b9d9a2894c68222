"""
Command Router
==============

Central router for the command-line subcommands. Maps each subcommand name to
its handler and turns handler failures into exit codes.
"""

import logging

from src.cli.command_handlers import (
    EXIT_FAILURE, EXIT_USAGE, CommandResult,
    handle_census, handle_classify, handle_count, handle_orth, handle_tables, handle_verify,
)
from src.common.errors import PolynomialParseError

logger = logging.getLogger("gonality-census")


class CommandRouter:
    """Routes parsed subcommands to their handlers."""

    def __init__(self):
        self._setup_handlers()

    def _setup_handlers(self):
        logger.debug("[ROUTER] Setting up command handlers")
        self.handlers = {
            "classify": handle_classify,
            "orth": handle_orth,
            "census": handle_census,
            "count": handle_count,
            "verify": handle_verify,
            "tables": handle_tables,
        }

    def handle_command(self, name: str, args) -> CommandResult:
        """Run the handler for ``name``; errors become an [ERROR] line and a nonzero exit code."""
        if name not in self.handlers:
            message = f"[ERROR] Unknown command: {name}. Available commands: {', '.join(self.handlers)}"
            return CommandResult(exit_code=EXIT_USAGE, text=[message], lines=[message])
        logger.info(f"[ROUTER] Routing {name} to handler")
        try:
            return self.handlers[name](args)
        except PolynomialParseError as e:
            message = f"[ERROR] Could not parse input for {name}: {e}"
            exit_code = EXIT_USAGE
        except Exception as e:
            message = f"[ERROR] Error executing {name}: {e}"
            exit_code = EXIT_FAILURE
        logger.error(message)
        return CommandResult(exit_code=exit_code, text=[message], lines=[message])
