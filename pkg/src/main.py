#!/usr/bin/env python3
"""
muntzbasis - Main CLI Application

Numerical experiments on Müntz polynomials, Fourier summation methods, Weil
derivatives and Schauder-type bases of periodized Müntz spaces. Each
subcommand runs one experiment and writes a self-describing JSON or CSV
artifact.
"""

import argparse
import sys
import traceback
from typing import Any, Callable, Dict, List, Optional

from .config.settings import load_config, tolerance_summary
from .pipeline.experiment_runner import ExperimentRunner
from .pipeline.function_catalog import FUNCTIONS
from .utils.config_loader import (
    FORMATS,
    SUMMATION_METHODS,
    ConfigLoader,
    parse_float_list,
    parse_int_list,
    parse_lambda
)
from .utils.error_handler import ConfigurationError, ErrorHandler, ExitCode
from .utils.logger import setup_logging
from .utils.output_formatter import OutputFormatter

GLOBAL_KEYS = ('command', 'config', 'settings', 'output', 'format', 'seed', 'verbose', 'log_level', 'debug',
               'error_report', 'lambda')


def _checked(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    """Wrap a list parser so argparse reports its errors as usage errors."""
    def convert(text: str) -> Any:
        try:
            return parse(text)
        except ConfigurationError as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parse.__name__
    return convert


int_list = _checked(parse_int_list)
float_list = _checked(parse_float_list)
lambda_rule = _checked(parse_lambda)


def _add(parser: Any, flag: str, key: str, **kwargs: Any) -> None:
    parser.add_argument(flag, dest=key, default=argparse.SUPPRESS, **kwargs)


def _add_lambda_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('exponent sequence')
    _add(group, '--lambda', 'lambda', type=lambda_rule, metavar='RULE:ARG',
         help="shorthand: power:2, geometric:2 or explicit:1,2.5,4")
    _add(group, '--rule', 'rule', choices=['power', 'geometric', 'explicit'], help='exponent rule')
    _add(group, '--p', 'p', type=float, help='power rule exponent: λn = scale·n^p + shift')
    _add(group, '--base', 'base', type=float, help='geometric rule base: λn = scale·base^n + shift')
    _add(group, '--values', 'values', type=float_list, help='explicit exponents, comma separated')
    _add(group, '--scale', 'scale', type=float, help='rule scale (default: 1)')
    _add(group, '--shift', 'shift', type=float, help='rule shift (default: 0)')
    _add(group, '--extra', 'extra', type=float_list, help='extra exponents merged into the sequence')
    _add(group, '--N', 'N', type=int, help='truncation length')


def _add_function_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('test function')
    _add(group, '--function', 'function', choices=list(FUNCTIONS),
         help='named test function: ' + ', '.join(f"{k} ({v})" for k, v in FUNCTIONS.items()))
    _add(group, '--value', 'value', type=float, help='value of the constant function')
    _add(group, '--rho', 'rho', type=float, help='coefficient decay ρ in (0, 1) for periodized-muntz')
    _add(group, '--terms', 'terms', type=int, help='number of exponents used by periodized-muntz')
    _add_lambda_arguments(parser)


def _add_global_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('general')
    _add(group, '--config', 'config', help='experiment config file (JSON); flags override its values')
    _add(group, '--settings', 'settings', help='numeric settings file (JSON), e.g. config/config.json')
    group.add_argument('-o', '--output', dest='output', default=argparse.SUPPRESS,
                       help='artifact path (default: standard output)')
    _add(group, '--format', 'format', choices=list(FORMATS), help='artifact format (default: json)')
    _add(group, '--seed', 'seed', type=lambda text: int(text, 0), help='random seed (default: 0x5EED)')
    group.add_argument('-v', '--verbose', action='store_true', help='enable verbose logging')
    group.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], default='INFO',
                       help='logging level (default: INFO)')
    group.add_argument('--debug', action='store_true', help='log full tracebacks on errors')
    group.add_argument('--error-report', action='store_true', help='export an error report at completion')


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    parser = argparse.ArgumentParser(
        prog='muntzbasis',
        description="muntzbasis - numerical experiments on Müntz polynomials and Fourier summation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Gap and Müntz conditions of λn = n²
  muntzbasis check-lambda --rule power --p 2 --N 1000

  # Fejér Lebesgue constants as a CSV table
  muntzbasis lebesgue --method fejer --n 1..32 --format csv -o fejer.csv

  # Best approximation of a triangle wave, certified bounds
  muntzbasis best-approx --function triangle --n 2,4,8

  # Build a basis from λn = 2ⁿ and validate its first 6 rows
  muntzbasis basis-build --lambda geometric:2 --N 8 -o basis.json
  muntzbasis basis-validate --input basis.json --L 6

Exit status: 0 success, 2 invalid input, 3 accuracy not reached, 4 I/O error.
        """
    )
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        _add_global_arguments(sub)
        return sub

    sub = command('check-lambda', 'gap condition α0, Müntz sum α1 and tail bound of an exponent sequence')
    _add_lambda_arguments(sub)

    sub = command('fourier-approx', 'sup-norm error of summation means U_n(f) for a test function')
    _add_function_arguments(sub)
    _add(sub, '--method', 'method', choices=list(SUMMATION_METHODS), help='summation method (default: fejer)')
    _add(sub, '--n', 'n', type=int_list, help="degrees, e.g. 1..32 or 2,4,8")
    _add(sub, '--K', 'K', type=int, help='number of Fourier coefficients (default: 4·max n)')
    _add(sub, '--tol', 'tol', type=float, help='quadrature tolerance (default: 1e-10)')

    sub = command('lebesgue', 'Lebesgue constants of a summation method')
    _add(sub, '--method', 'method', choices=list(SUMMATION_METHODS), help='summation method (default: fejer)')
    _add(sub, '--n', 'n', type=int_list, help='degrees (default: 1..32)')
    _add(sub, '--tol', 'tol', type=float, help='quadrature tolerance (default: 1e-10)')

    sub = command('weil-deriv', '(ψ, β)-derivative of a trigonometric polynomial')
    _add(sub, '--input', 'input', help='trigonometric polynomial JSON {"a0", "harmonics"}')
    _add(sub, '--psi-rule', 'psi_rule', choices=['power', 'log'], help='ψ(k) = k^(−r) or 1/ln(k+1)')
    _add(sub, '--r', 'r', type=float, help='power rule decay r (default: 2)')
    _add(sub, '--beta', 'beta', type=float, help='phase β in units of π/2 (default: 1)')
    _add(sub, '--K', 'K', type=int, help='ψ table length (default: 1024)')
    _add(sub, '--tol', 'tol', type=float, help='sup-norm refinement tolerance (default: 1e-9)')

    sub = command('best-approx', 'best uniform approximation E_n by trigonometric polynomials of degree n−1')
    _add_function_arguments(sub)
    _add(sub, '--n', 'n', type=int_list, help='values of n (default: 1,2,4,8)')
    _add(sub, '--grid-factor', 'grid_factor', type=int, help='discrete grid size per unit n (default: 32)')
    _add(sub, '--refinement-passes', 'refinement_passes', type=int, help='grid refinement passes (default: 1)')
    _add(sub, '--tol', 'tol', type=float, help='sup-norm refinement tolerance (default: 1e-9)')

    sub = command('rate-experiment', 'rate statistic E_n·n^γ/ln n on periodized Müntz functions')
    _add_lambda_arguments(sub)
    _add(sub, '--gamma', 'gamma', type=float, help='rate exponent γ in (0, 1) (default: 0.5)')
    _add(sub, '--n', 'n', type=int_list, help='values of n >= 2')
    _add(sub, '--samples', 'samples', type=int, help='number of random test functions (default: 1)')
    _add(sub, '--rho', 'rho', type=float, help='coefficient decay ρ (default: 0.9)')
    _add(sub, '--terms', 'terms', type=int, help='exponents per test function (default: 32)')
    _add(sub, '--grid-factor', 'grid_factor', type=int, help='discrete grid size per unit n (default: 32)')
    _add(sub, '--refinement-passes', 'refinement_passes', type=int, help='grid refinement passes (default: 1)')

    sub = command('asymptotic', 'partial sums of n^(−α) sin/cos 2πnx against their leading terms')
    _add(sub, '--alpha', 'alpha', type=float, help='α in (0, 1) (default: 0.5)')
    _add(sub, '--x', 'x', type=float_list, help='points in (0, 1/4)')
    _add(sub, '--K', 'K', type=int, help='summed terms before the tail estimate (default: 10^6)')
    _add(sub, '--certify-tol', 'certify_tol', type=float, help='tail bound to certify (default: 1e-6)')

    sub = command('remez-eta', 'seeded lower bound for the Remez constant η(Λ, δ)')
    _add_lambda_arguments(sub)
    _add(sub, '--delta', 'delta', type=float, help='δ in (0, 1) (default: 0.5)')
    _add(sub, '--samples', 'samples', type=int, help='random samples (default: 1000)')
    _add(sub, '--terms', 'terms', type=int, help='exponents per sample (default: 8)')

    sub = command('theorem5', 'exponent shift bound ‖p − Sp‖ <= 4‖p‖Δm/λm along a shift chain')
    _add(sub, '--from', 'from', help='Müntz polynomial JSON {"terms": [[λ, a], ...]}')
    _add(sub, '--to', 'to', help='target exponents JSON {"exponents": [...]} or {"targets": [[...], ...]}')
    _add(sub, '--delta', 'delta', type=float, help='total shift δ for the hypothesis cap (default: largest shift)')

    sub = command('weak-norm', 'weak L_s quasi-norm sup y·μ{|f| >= y}^(1/s) on (a, b)')
    _add_function_arguments(sub)
    _add(sub, '--s', 's', type=float, help='exponent s > 0 (default: 1)')
    _add(sub, '--a', 'a', type=float, help='interval start (default: 0)')
    _add(sub, '--b', 'b', type=float, help='interval end (default: 1)')
    _add(sub, '--scan-points', 'scan_points', type=int, help='level-set scan points (default: 2^20)')

    sub = command('prop10', "weak-L1 norm of p' and the Cauchy pointwise check near t = 1")
    _add(sub, '--input', 'input', help='Müntz polynomial JSON {"terms": [[λ, a], ...]}')
    _add(sub, '--scan-points', 'scan_points', type=int, help='level-set scan points (default: 2^20)')
    _add(sub, '--disc-points', 'disc_points', type=int, help='points on the disc boundary (default: 4096)')

    sub = command('basis-build', 'step system of the periodized difference system by Gaussian exclusion')
    _add_lambda_arguments(sub)
    _add(sub, '--method', 'method', choices=list(SUMMATION_METHODS), help='summation method (default: fejer)')
    _add(sub, '--degrees', 'degrees', type=int_list, help='summation degrees (default: 2,4,8,16)')
    _add(sub, '--pivot-tol', 'pivot_tol', type=float, help='relative pivot tolerance (default: 1e-10)')
    _add(sub, '--rank-tol', 'rank_tol', type=float, help='candidate independence tolerance (default: 1e-10)')

    sub = command('basis-validate', 'inclinations, projection norms and error curve of a step-system section')
    _add(sub, '--input', 'input', help='step system JSON or basis-build artifact')
    _add(sub, '--L', 'L', type=int, help='section length (default: 6)')
    _add(sub, '--probes', 'probes', type=int, help='random probes (default: 200)')
    _add(sub, '--grid-m', 'grid_m', type=int, help='discrete grid size (default: max(256, 32(deg+1)))')
    _add(sub, '--directions', 'directions', type=int, help='inclination search directions (default: 64)')

    return parser


def _flag_config(options: Dict[str, Any]) -> Dict[str, Any]:
    """Experiment config holding only the flags the user gave."""
    params = dict(options.get('lambda', {}))
    params.update({key: value for key, value in options.items() if key not in GLOBAL_KEYS})
    flag_config: Dict[str, Any] = {'params': params}
    for key in ('seed', 'output', 'format'):
        if key in options:
            flag_config[key] = options[key]
    return flag_config


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI application."""
    parser = create_argument_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not args.command:
        parser.print_help(sys.stderr)
        return ExitCode.PRECONDITION

    options = vars(args)
    setup_logging(verbose=args.verbose, level=args.log_level)
    error_handler = ErrorHandler(debug_mode=args.debug)
    exit_code = ExitCode.SUCCESS

    try:
        settings = load_config(options.get('settings'))
        config = ConfigLoader().resolve(args.command, _flag_config(options),
                                        config_path=options.get('config'), default_seed=settings['seed'])
        outcome = ExperimentRunner(settings).run(config)

        formatter = OutputFormatter(tolerance_summary(settings))
        artifact_config = config.to_dict()
        if config.format == 'csv':
            if config.output:
                formatter.save_csv(outcome.rows, outcome.columns, artifact_config, config.output)
            else:
                sys.stdout.write(formatter.render_csv(outcome.rows, outcome.columns, artifact_config))
        else:
            if config.output:
                formatter.save_json(outcome.result, artifact_config, config.output)
            else:
                sys.stdout.write(formatter.render_json(outcome.result, artifact_config))

        if outcome.accuracy_flag:
            exit_code = ExitCode.ACCURACY

    except KeyboardInterrupt:
        print("Interrupted", file=sys.stderr)
        error_handler.handle_error(Exception("User interrupted the experiment"),
                                   {'context': 'main_execution', 'stage': 'user_interrupt'})
        exit_code = ExitCode.UNEXPECTED

    except Exception as e:
        context = {
            'context': 'main_execution',
            'command': args.command,
            'arguments': {k: v for k, v in options.items() if k not in ('verbose', 'debug')},
        }
        error_result = error_handler.handle_error(e, context)
        print(f"Error [{error_result['error_id']}] {error_result['category']}: {e}", file=sys.stderr)
        if args.debug:
            traceback.print_exc()
        exit_code = error_result['exit_code']

    if args.error_report:
        if error_handler.get_error_summary()['total_errors'] > 0:
            report_path = error_handler.export_error_report()
            print(f"Error report generated: {report_path}", file=sys.stderr)
        else:
            print("No errors to report", file=sys.stderr)

    return int(exit_code)


if __name__ == "__main__":
    sys.exit(main())
