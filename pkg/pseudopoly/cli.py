#!/usr/bin/env python3
"""
pseudopoly Command Line Interface
Checks, factorizes and verifies tabulated functions over finite distributive
lattices, and compares the engine against the brute-force oracle.

Exit codes: 0 ok, 1 negative verdict, 2 input error, 3 cap exceeded (strict mode).
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from . import __version__
from .compare import run_comparison
from .errors import CapExceeded, FormatError, PseudoPolyError
from .formats import load_factorization, load_instance, load_lattice
from .oracle import InstanceLimits
from .report import (
    BOUNDS_MODES,
    CHAIN_MODES,
    build_check_report,
    build_factorize_report,
    build_info_report,
    build_verify_report,
    render_text,
)
from .utils import ConfigManager, dump_json, parse_config_value, parse_seed_range, setup_logging, write_output

logger = logging.getLogger('PseudoPoly.CLI')

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3


def create_parser():
    """Create the main argument parser"""
    parser = argparse.ArgumentParser(
        prog='pseudopoly',
        description='Pseudo-polynomial functions over finite distributive lattices',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Decide whether the airline table is pseudo-polynomial
  pseudopoly check --domains data/airline/domains.json --table data/airline/table.csv

  # List every factorization as text
  pseudopoly factorize --domains data/airline/domains.json --table data/airline/table.csv --format text

  # Verify a factorization taken from a report
  pseudopoly verify --domains data/airline/domains.json --table data/airline/table.csv --factorization fac.json

  # Compare engine and oracle on 200 random instances
  pseudopoly oracle-compare --seeds 1..200 --limits 2,3,6

  # Show the closure/interior table of a lattice
  pseudopoly info --lattice data/airline/lattice.json
        """
    )

    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {__version__}'
    )

    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Enable verbose logging'
    )

    parser.add_argument(
        '--debug',
        action='store_true',
        help='Enable debug logging (shows every Phi computation)'
    )

    parser.add_argument(
        '--config-dir',
        type=Path,
        help='Configuration directory (default: ~/.pseudopoly)'
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    def add_instance_args(sub):
        sub.add_argument('--lattice', help='Lattice JSON (overrides the lattice named in the domain file)')
        sub.add_argument('--domains', required=True, help='Domain JSON')
        sub.add_argument('--table', required=True, help='Table CSV with header x1,...,xn,f')

    def add_output_args(sub):
        sub.add_argument('--output', '-o', help='Write the report to this file instead of stdout')
        sub.add_argument('--format', choices=['json', 'text'], default='json',
                         help='Report format (default: json)')

    # Check command
    check_parser = subparsers.add_parser(
        'check',
        help='Decide pseudo-polynomiality',
        description='Boundary condition, designated elements, Phi tables and the pseudo-polynomial verdict'
    )
    add_instance_args(check_parser)
    add_output_args(check_parser)
    check_parser.add_argument('--chain-mode', choices=CHAIN_MODES,
                              help='Chain specialization (default from config: auto)')
    check_parser.add_argument('--bounds', choices=BOUNDS_MODES, default='auto',
                              help='Infer missing designated elements or require them declared')

    # Factorize command
    factorize_parser = subparsers.add_parser(
        'factorize',
        help='Enumerate factorizations',
        description='List p0 and every factorization f = p(phi1(x1), ..., phin(xn)) up to the cap'
    )
    add_instance_args(factorize_parser)
    add_output_args(factorize_parser)
    factorize_parser.add_argument('--chain-mode', choices=CHAIN_MODES,
                                  help='Chain specialization (default from config: auto)')
    factorize_parser.add_argument('--bounds', choices=BOUNDS_MODES, default='auto',
                                  help='Infer missing designated elements or require them declared')
    factorize_parser.add_argument('--max-factorizations', type=int,
                                  help='Stop after this many factorizations (default from config: 10000)')
    factorize_parser.add_argument('--count-only', action='store_true',
                                  help='Report counts without listing factorizations')
    factorize_parser.add_argument('--strict', action='store_true', default=None,
                                  help='Exit with code 3 when the cap is exceeded')

    # Verify command
    verify_parser = subparsers.add_parser(
        'verify',
        help='Verify a factorization',
        description='Check f = p o phi for a factorization JSON file'
    )
    add_instance_args(verify_parser)
    add_output_args(verify_parser)
    verify_parser.add_argument('--factorization', required=True, help='Factorization JSON')
    verify_parser.add_argument('--cross-check', action='store_true',
                               help='Confirm the 2^n-point shortcut against every tuple')

    # Oracle comparison command
    oracle_parser = subparsers.add_parser(
        'oracle-compare',
        help='Compare engine and brute-force oracle',
        description='Run both on seeded random desk-scale instances and summarize'
    )
    add_output_args(oracle_parser)
    oracle_parser.add_argument('--seeds', default='1..20', help='Inclusive seed range A..B (default: 1..20)')
    oracle_parser.add_argument('--seed', type=int, help='Run a single seed (overrides --seeds)')
    oracle_parser.add_argument('--limits', help='Max arity, max |Xk|, max |Y| as n,x,y (default from config)')
    oracle_parser.add_argument('--max-search', type=int, help='Oracle search-space cap')

    # Info command
    info_parser = subparsers.add_parser(
        'info',
        help='Show lattice information',
        description='Elements, join-irreducibles, chain flag and cl/int of every complement'
    )
    info_parser.add_argument('--lattice', required=True, help='Lattice JSON')
    info_parser.add_argument('--format', choices=['json', 'text'], default='text',
                             help='Output format (default: text)')

    # Config command
    config_parser = subparsers.add_parser(
        'config',
        help='Manage configuration',
        description='View and modify pseudopoly configuration'
    )

    config_parser.add_argument(
        '--show',
        action='store_true',
        help='Show current configuration'
    )

    config_parser.add_argument(
        '--set',
        nargs=2,
        metavar=('KEY', 'VALUE'),
        help='Set configuration value: KEY VALUE'
    )

    config_parser.add_argument(
        '--get',
        metavar='KEY',
        help='Get configuration value'
    )

    config_parser.add_argument(
        '--reset',
        action='store_true',
        help='Reset configuration to defaults'
    )

    return parser


@dataclass(frozen=True)
class RunConfig:
    """Command-line flags merged over the configuration file, validated up front."""

    command: str
    lattice: Optional[Path] = None
    domains: Optional[Path] = None
    table: Optional[Path] = None
    factorization: Optional[Path] = None
    output: Optional[str] = None
    fmt: str = 'json'
    chain_mode: str = 'auto'
    bounds_mode: str = 'auto'
    max_factorizations: int = 10000
    count_only: bool = False
    strict: bool = False
    cross_check: bool = False
    precompute: Union[bool, str] = 'auto'
    limits: Optional[InstanceLimits] = None
    seeds: Optional[List[int]] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: ConfigManager) -> 'RunConfig':
        def flag(name, key):
            value = getattr(args, name, None)
            return config.get(key) if value is None else value

        limits = None
        seeds = None
        if args.command == 'oracle-compare':
            max_search = flag('max_search', 'oracle.max_search')
            if args.limits:
                limits = InstanceLimits.parse(args.limits, max_search)
            else:
                stored = config.get('oracle.limits') or {}
                try:
                    limits = InstanceLimits(max_search=max_search, **stored)
                except TypeError as e:
                    raise FormatError(f"Invalid oracle.limits in configuration: {e}") from e
            if args.seed is not None:
                seeds = [args.seed]
            else:
                start, end = parse_seed_range(args.seeds)
                seeds = list(range(start, end + 1))

        run = cls(
            command=args.command,
            lattice=Path(args.lattice) if getattr(args, 'lattice', None) else None,
            domains=Path(args.domains) if getattr(args, 'domains', None) else None,
            table=Path(args.table) if getattr(args, 'table', None) else None,
            factorization=Path(args.factorization) if getattr(args, 'factorization', None) else None,
            output=getattr(args, 'output', None),
            fmt=getattr(args, 'format', 'json'),
            chain_mode=flag('chain_mode', 'chains.mode'),
            bounds_mode=getattr(args, 'bounds', 'auto'),
            max_factorizations=flag('max_factorizations', 'enumeration.max_factorizations'),
            count_only=bool(getattr(args, 'count_only', False)),
            strict=bool(flag('strict', 'enumeration.strict')),
            cross_check=bool(getattr(args, 'cross_check', False)),
            precompute=config.get('closure.precompute', 'auto'),
            limits=limits,
            seeds=seeds,
        )
        run.validate()
        return run

    def validate(self) -> None:
        for label, path in (('lattice', self.lattice), ('domains', self.domains),
                            ('table', self.table), ('factorization', self.factorization)):
            if path is not None and not path.is_file():
                raise FormatError(f"{label} file not found: {path}", path=str(path))
        if self.chain_mode not in CHAIN_MODES:
            raise FormatError(f"chain mode must be one of {', '.join(CHAIN_MODES)}, got {self.chain_mode!r}")
        if not isinstance(self.max_factorizations, int) or self.max_factorizations < 1:
            raise FormatError(f"--max-factorizations must be a positive integer, got {self.max_factorizations!r}")
        if self.precompute not in (True, False, 'auto', 'table', 'scan'):
            raise FormatError(f"closure.precompute must be auto, table, scan, true or false, "
                              f"got {self.precompute!r}")

    def load_table(self):
        return load_instance(self.domains, self.table, self.lattice, self.precompute)


def _emit(report: Dict[str, Any], run: RunConfig) -> None:
    if run.fmt == 'text':
        text = render_text(report)
        if run.output:
            Path(run.output).write_text(text, encoding='utf-8')
        else:
            print(text, end='')
    else:
        write_output(report, run.output)


def _emit_error(e: PseudoPolyError, fmt: str) -> None:
    if fmt == 'text':
        print(f"❌ {e.message}", file=sys.stderr)
    else:
        print(dump_json({"schema": 1, "error": e.to_dict()}), end='', file=sys.stderr)


def check_main(run: RunConfig) -> int:
    """Main function for check command"""
    f = run.load_table()
    report, _, verdict = build_check_report(f, run.chain_mode, run.bounds_mode)
    _emit(report, run)
    return EXIT_OK if verdict else EXIT_NEGATIVE


def factorize_main(run: RunConfig) -> int:
    """Main function for factorize command"""
    f = run.load_table()
    report, verdict = build_factorize_report(f, run.chain_mode, run.bounds_mode,
                                             run.max_factorizations, run.count_only)
    _emit(report, run)
    if not verdict:
        return EXIT_NEGATIVE
    if report["counts"]["capped"] and run.strict:
        return EXIT_CAP_EXCEEDED
    return EXIT_OK


def verify_main(run: RunConfig) -> int:
    """Main function for verify command"""
    f = run.load_table()
    factorization = load_factorization(run.factorization, f)
    report, verdict = build_verify_report(f, factorization, run.cross_check)
    _emit(report, run)
    return EXIT_OK if verdict else EXIT_NEGATIVE


def oracle_compare_main(run: RunConfig) -> int:
    """Main function for oracle-compare command"""
    summary = run_comparison(run.seeds, run.limits)
    if run.fmt == 'text':
        failed = summary["failed"]
        print(f"{'✅' if not failed else '❌'} Oracle comparison: "
              f"{summary['passed']}/{summary['instances']} instances passed "
              f"({summary['pseudo_polynomial']} pseudo-polynomial)")
        for result in summary["results"]:
            if not result["passed"]:
                print(f"   • seed {result['seed']}: {'; '.join(result['failures'])}")
        if run.output:
            write_output(summary, run.output)
    else:
        write_output(summary, run.output)
    return EXIT_OK if not summary["failed"] else EXIT_NEGATIVE


def info_main(run: RunConfig) -> int:
    """Main function for info command"""
    lattice = load_lattice(run.lattice, run.precompute)
    report = build_info_report(lattice)
    if run.fmt == 'json':
        print(dump_json(report), end='')
    else:
        print("""
╔══════════════════════════════════════════════════════════════╗
║                    Lattice Information                       ║
╚══════════════════════════════════════════════════════════════╝
""")
        print(render_text(report), end='')
    return EXIT_OK


def config_main(args) -> int:
    """Main function for config command"""
    config_manager = ConfigManager(args.config_dir)

    if args.show:
        print("📋 Current Configuration:")
        print(json.dumps(config_manager.data, indent=2))

    elif args.set:
        key, value = args.set
        value = parse_config_value(value)
        config_manager.set(key, value)
        print(f"✅ Set {key} = {json.dumps(value)}")

    elif args.get:
        value = config_manager.get(args.get)
        print(json.dumps(value, indent=2))

    elif args.reset:
        config_manager.reset_to_defaults()
        print("✅ Configuration reset to defaults")

    else:
        print("❌ No config action specified. Use --show, --set, --get, or --reset")
        return EXIT_INPUT_ERROR

    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = create_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_INPUT_ERROR
    if args.command == 'config':
        setup_logging('DEBUG' if args.debug else ('INFO' if args.verbose else 'WARNING'))
        return config_main(args)

    config = ConfigManager(args.config_dir)
    log_level = 'DEBUG' if args.debug else ('INFO' if args.verbose else config.get('logging.level', 'WARNING'))
    setup_logging(log_level, config.get('logging.file'))

    fmt = getattr(args, 'format', 'json')
    try:
        run = RunConfig.from_args(args, config)
        if args.command == 'check':
            return check_main(run)
        elif args.command == 'factorize':
            return factorize_main(run)
        elif args.command == 'verify':
            return verify_main(run)
        elif args.command == 'oracle-compare':
            return oracle_compare_main(run)
        elif args.command == 'info':
            return info_main(run)
        else:
            parser.print_help()
            return EXIT_INPUT_ERROR
    except CapExceeded as e:
        logger.warning(f"Cap exceeded: {e.message}")
        _emit_error(e, fmt)
        return EXIT_CAP_EXCEEDED
    except PseudoPolyError as e:
        logger.debug(f"Input error: {e.to_dict()}")
        _emit_error(e, fmt)
        return EXIT_INPUT_ERROR


# Entry points for setup.py console_scripts
def check_main_entry():
    """Entry point for pseudopoly-check command"""
    sys.argv = ['pseudopoly', 'check'] + sys.argv[1:]
    return main()


def factorize_main_entry():
    """Entry point for pseudopoly-factorize command"""
    sys.argv = ['pseudopoly', 'factorize'] + sys.argv[1:]
    return main()


if __name__ == '__main__':
    sys.exit(main())
