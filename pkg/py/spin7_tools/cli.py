# py/spin7_tools/cli.py
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import ale_topology as topology_cmds
from . import enumeration_catalog as enumerate_cmds
from . import nogo as nogo_cmds
from . import orbifold_group as census_cmds
from . import representation_certifier as certify_cmds
from . import selftest as selftest_cmds
from .common import EXIT_USAGE, configure_logging
from .config import positive_int
from .errors import Spin7Error


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spin7")
    p.add_argument("-v", "--verbose", action="store_true", help="Progress and per-check logging")
    p.add_argument("-d", "--debug", action="store_true", help="Debug logging")
    p.add_argument("--config", default=None, help="YAML run configuration (default: $SPIN7_CONFIG)")
    p.add_argument("--jobs", "-j", type=positive_int, default=None, help="Worker processes (default: $SPIN7_JOBS or 1)")

    sub = p.add_subparsers(dest="cmd", required=True)

    selftest_cmds.register_subcommands(sub)
    census_cmds.register_subcommands(sub)
    enumerate_cmds.register_subcommands(sub)
    certify_cmds.register_subcommands(sub)
    nogo_cmds.register_subcommands(sub)
    topology_cmds.register_subcommands(sub)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    configure_logging(args.verbose, args.debug)
    try:
        return args.fn(args)
    except Spin7Error as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        if isinstance(e.code, str):
            print(e.code, file=sys.stderr)
            return EXIT_USAGE
        raise


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
