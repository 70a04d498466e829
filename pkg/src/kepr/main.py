"""Entry point of the ``kepr`` command."""

import logging
import sys
from typing import List, Optional

from kepr.cli import HANDLERS, build_parser
from kepr.config import settings
from kepr.exceptions import KeprError

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    # Records go to stderr; stdout carries line-record output.
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code.

    0 on success, 1 on usage or configuration errors, 2 on data errors,
    3 on backend errors.
    """
    parser = build_parser(HANDLERS)
    try:
        args = parser.parse_args(argv)
        configure_logging(args.log_level or settings.log_level)
        logger.debug(f"Running {args.command} ({settings.service_name}, {settings.environment})")
        args.handler(args)
    except KeprError as e:
        logger.error(str(e))
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
