import asyncio
import logging
import sys
from typing import List, Optional

from .infrastructure.cli import EXIT_FAILURE, attach_signed_values, build_parser, cmd_bench, cmd_compute
from .utils.config import Config


async def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the height calculator."""
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(attach_signed_values(argv))

    try:
        # Initialize configuration
        config = Config(args.config)
    except Exception as e:
        logging.basicConfig(level=logging.INFO)
        logging.getLogger(__name__).error(f"Error loading configuration: {str(e)}")
        return EXIT_FAILURE

    # Setup logging (stderr, results go to stdout)
    level = logging.DEBUG if args.verbose else getattr(
        logging, config.logging_config.level, logging.INFO
    )
    if args.verbose:
        config.logging_config.level = "DEBUG"
    logging.basicConfig(level=level, format=config.logging_config.format, stream=sys.stderr)
    logger = logging.getLogger(__name__)
    logger.debug(f"Loaded configuration from {args.config}")

    if args.command == "compute":
        return await cmd_compute(args, config)
    return cmd_bench(args, config)


def run() -> None:
    """Console-script wrapper."""
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    # Run the async main function
    run()
