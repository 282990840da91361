"""Command-line entry point"""

from argparse import ArgumentParser, Namespace
from typing import List, Optional
import json
import logging
import sys

from wflag import __version__
from wflag.cli.commands import (
    cmd_catalog,
    cmd_construct,
    cmd_groebner,
    cmd_hilbert,
    cmd_search,
    render_text,
)
from wflag.cli.verify import SUITES, assert_passed, cmd_verify
from wflag.config import get_settings
from wflag.exceptions import WflagError
from wflag.models import OrderKind, TargetClass

logger = logging.getLogger(__name__)

settings = get_settings()


class WflagArgumentParser(ArgumentParser):
    """Usage errors exit with status 1 like every other validation error"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    parser = WflagArgumentParser(
        prog="wflag",
        description="Weighted flag varieties: Hilbert series, constructions and Groebner checks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override WFLAG_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=WflagArgumentParser)

    def add(name: str, handler, help_text: str) -> ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="Print the JSON report")
        p.set_defaults(handler=handler)
        return p

    add("catalog", cmd_catalog, "List the supported flag varieties")

    p = add("hilbert", cmd_hilbert, "Hilbert series of a weighted flag variety")
    p.add_argument("--variety", required=True)
    p.add_argument("--mu", required=True, help="Coweight, e.g. 1,0,0")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--expand", type=int, default=None, help="Also print h_0..h_K")

    p = add("construct", cmd_construct, "Apply cones and sections to a weighted flag variety")
    p.add_argument("--variety", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--ops", default="", help="e.g. cone:1,section:2,section:2,section:3")

    p = add("search", cmd_search, "Search for Calabi-Yau or Fano threefold candidates")
    p.add_argument("--variety", required=True)
    p.add_argument("--target", choices=[t.value for t in TargetClass], default=TargetClass.CY3.value)
    p.add_argument("--mu-bound", type=int, default=2)
    p.add_argument("--u-bound", type=int, default=3)
    p.add_argument("--max-sections", type=int, default=4)
    p.add_argument("--max-cones", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)

    p = add("groebner", cmd_groebner, "Groebner basis and Hilbert series of an appendix ideal")
    p.add_argument("--ideal", required=True, choices=["lgr36", "fl13"])
    p.add_argument("--weights", default=None, help="Comma-separated weights or cy_lgr36|cy_fl13_a|cy_fl13_b|cy_fl13_b_x10")
    p.add_argument("--order", choices=[o.value for o in OrderKind], default=OrderKind.WDEGREVLEX.value)

    p = add("verify", cmd_verify, "Run the acceptance suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--include-slow", action="store_true", help="Include the E6 entry in the table scan")

    return parser


def configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def run(args: Namespace) -> int:
    report = args.handler(args)
    if args.json:
        print(json.dumps(report.model_dump(mode="json"), indent=2))
    else:
        print(render_text(report))
    if args.command == "verify":
        assert_passed(report)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    logger.debug(f"🚀 wflag {__version__}: {args.command}")
    try:
        return run(args)
    except WflagError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
