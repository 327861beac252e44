import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from logring.cli.commands import cmd_class, cmd_hodge, cmd_snc, cmd_subdivide, cmd_verify, fail
from logring.config.settings import settings
from logring.services.verification import SUITES

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logring",
        description="Exact computations in the log Grothendieck ring K0[P]/(P^2 + P[G_m])",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    class_parser = commands.add_parser("class", help="normal form and invariants of a fan, s.n.c. pair or expression")
    class_parser.add_argument("--input", help="fan, s.n.c. or expression JSON file")
    class_parser.add_argument("--expr", help="class expression, e.g. 'P*(P+(L-1))'")
    class_parser.add_argument("--preset", help="preset fan name, e.g. P2 or A2_blowup")
    class_parser.set_defaults(handler=cmd_class)

    verify_parser = commands.add_parser("verify", help="run verification suites")
    verify_parser.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    verify_parser.add_argument("--seed", type=int, help="override the configured random seed")
    verify_parser.set_defaults(handler=cmd_verify)

    subdivide_parser = commands.add_parser("subdivide", help="stellar subdivision of a fan at a ray")
    subdivide_parser.add_argument("--input", help="fan JSON file")
    subdivide_parser.add_argument("--ray", help="comma-separated integer coordinates")
    subdivide_parser.add_argument("--output", help="where to write the refined fan")
    subdivide_parser.set_defaults(handler=cmd_subdivide)

    hodge_parser = commands.add_parser("hodge", help="log Hodge oracle on the preset inputs")
    hodge_parser.set_defaults(handler=cmd_hodge)

    snc_parser = commands.add_parser("snc", help="class, rho expansion and chi_y bridge of an s.n.c. pair")
    snc_parser.add_argument("--input", help="s.n.c. JSON file")
    snc_parser.add_argument("--preset", help="preset pair, e.g. P2_triangle")
    snc_parser.set_defaults(handler=cmd_snc)

    for sub in (class_parser, verify_parser, subdivide_parser, hodge_parser, snc_parser):
        sub.add_argument("--json", action="store_true", help="emit the machine-readable report")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as exc:
        return fail(f"invalid input: {exc}")
    except ValueError as exc:
        return fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
