# app/main.py
import argparse
import logging
import sys
from typing import List, Optional

from app.config.settings import settings
from core.errors import EXIT_INPUT_ERROR, EXIT_INTERNAL, BaseError
from core.logging.setup import setup_logging
from domain.schemas.run import RunConfig
from routes.v1 import deformation, evaluation

logger = logging.getLogger(__name__)

_GLOBAL_FLAGS = ("command", "output", "field", "log_level", "log_file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tortile-engine",
        description="Quantum invariants of framed links over truncated rings and deformation cohomology "
                    "of monoidal functors",
    )
    parser.add_argument("--field", default=None, help="Q or Fp:<prime>; fixed by the first artifact if omitted")
    parser.add_argument("--order", type=int, default=None, help="Truncation order n")
    parser.add_argument("--output", choices=["human", "machine"], default=None, help="Output mode")
    parser.add_argument("--log-level", default=None, help="Console log level")
    parser.add_argument("--log-file", default=None, help="Also log at DEBUG to this file")
    subparsers = parser.add_subparsers(dest="command", required=True)
    evaluation.register(subparsers)
    deformation.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    try:
        setup_logging(args.log_level or settings.LOG_LEVEL, args.log_file or settings.LOG_FILE)
        config = RunConfig(
            command=args.command,
            inputs={k: v for k, v in vars(args).items() if isinstance(v, str) and k not in _GLOBAL_FLAGS},
            field=args.field,
            order=args.order,
            output_mode=args.output or settings.OUTPUT_MODE,
        )
        return args.handler(args, config)
    except BaseError as be:
        print(f"error: {be.detail}", file=sys.stderr)
        return be.exit_code
    except ValueError as ve:
        print(f"error: {ve}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.critical(f"Unexpected error: {str(e)}", exc_info=True)
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
