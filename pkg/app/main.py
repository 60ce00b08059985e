import argparse
import logging
import sys
from typing import List, Optional

from . import config
from .commands import curve, dioph, enumerate as enumerate_cmd, szpiro, verify
from .errors import CurveToolError

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ectorsion",
        description="Elliptic curves over Q with a point of order N and a conductor with two prime divisors.",
    )
    parser.add_argument("--log-level", default=config.LOG_LEVEL,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR"), type=str.upper,
                        help="stderr log level (env ECTORSION_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="cmd", required=True)
    for command in (curve, enumerate_cmd, verify, dioph, szpiro):
        command.add_parser(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=args.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except CurveToolError as e:
        logger.error("%s failed: %s", args.cmd, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
