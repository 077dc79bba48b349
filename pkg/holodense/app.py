"""holodense command line: exact densities, experiments, scans, point counts and oracle cross-checks

stdout carries only the JSON / CSV result; progress and errors go to the log on stderr.
Exit codes: 0 success, 2 guard-limit refusal, 1 any other error.
"""
import argparse
import json
import sys
from functools import reduce
from typing import List, Optional

from .config import LogCapture, load_config, setup_logging
from .cross_check_agent import CrossCheckAgent
from .curve_agent import COUNT_HEADER, PLACE_HEADER, CurveAgent, rows_to_csv
from .density_agent import DensityAgent
from .errors import GuardLimitExceeded, HolodenseError, InputError
from .experiment_agent import ExperimentAgent, scan_summary
from .parameter_parsing import parse_curve, parse_field, parse_generic, parse_removed
from .poly import format_poly, gcd, parse_poly
from .reports import EXHAUSTIVE, MONTE_CARLO, reports_to_csv, reports_to_json

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_GUARD = 2

_MODES = {'exhaustive': EXHAUSTIVE, 'mc': MONTE_CARLO}


def _add_common(p: argparse.ArgumentParser):
    p.add_argument('--config', default=None, help='YAML config (default: config/holodense.yaml)')
    p.add_argument('--workers', type=int, default=None, help='worker processes')


def _add_space(p: argparse.ArgumentParser, choices):
    p.add_argument('--space', choices=choices, default='rational')
    p.add_argument('--q', type=int, help='field size (rational / generic / finite)')
    p.add_argument('--curve', help='Q,A,B for y^2 = x^3 + Ax + B over F_Q')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='holodense', description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('density', help='exact density and truncated-product enclosure')
    _add_space(p, ['rational', 'elliptic', 'generic', 'finite'])
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--t', type=int, default=None, help='truncation degree')
    p.add_argument('--lpoly', help='L-polynomial coefficients c0,c1,... (generic)')
    p.add_argument('--removed', help='degrees of the removed places (generic)')
    p.add_argument('--degrees', help='degrees of the places of a finite S (finite)')
    _add_common(p)

    p = sub.add_parser('experiment', help='coprime fraction over L(nP_inf)^m')
    _add_space(p, ['rational', 'elliptic'])
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--mode', choices=['exhaustive', 'mc', 'truncated'], default='exhaustive')
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--t', type=int, default=None, help='number of places (truncated mode)')
    p.add_argument('--out', choices=['csv', 'json'], default='csv')
    _add_common(p)

    p = sub.add_parser('scan', help='experiments along the chain nP_inf')
    _add_space(p, ['rational', 'elliptic'])
    p.add_argument('--n-min', type=int, required=True)
    p.add_argument('--n-max', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--mode', choices=['exhaustive', 'mc'], default='exhaustive')
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--out', choices=['csv', 'json'], default='csv')
    _add_common(p)

    p = sub.add_parser('places', help='affine places of degree <= dmax')
    p.add_argument('--curve', required=True)
    p.add_argument('--dmax', type=int, required=True)
    p.add_argument('--out', choices=['csv'], default='csv')
    _add_common(p)

    p = sub.add_parser('count', help='N_d, a_d, B_d table')
    p.add_argument('--curve', required=True)
    p.add_argument('--dmax', type=int, required=True)
    p.add_argument('--no-verify', action='store_true', help='skip the brute-force recount')
    _add_common(p)

    p = sub.add_parser('coprime', help='gcd of polynomials over F_q given as c0,c1,... (low degree first)')
    p.add_argument('--q', type=int, required=True, help='prime field size')
    p.add_argument('--polys', nargs='+', required=True, metavar='C0,C1,...')
    _add_common(p)

    p = sub.add_parser('crosscheck', help='compare independent coprimality oracles')
    _add_space(p, ['rational', 'elliptic'])
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--scan', action='store_true', help='also run the literal place scan (elliptic)')
    _add_common(p)
    return parser


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name} is required for --space {args.space}")
    return value


def _kind(args):
    if args.space == 'elliptic':
        return parse_curve(_require(args, 'curve'))
    if args.space == 'generic':
        return parse_generic(_require(args, 'lpoly'), _require(args, 'removed'), _require(args, 'q'))
    return parse_field(_require(args, 'q'))


def _run_density(args, config, log_capture) -> str:
    agent = DensityAgent(config)
    if args.space == 'finite':
        result = agent.finite_support(_require(args, 'q'), parse_removed(_require(args, 'degrees')), args.m)
    else:
        result = agent.enclosure(_kind(args), args.m, args.t, log_capture)
    return json.dumps(result, indent=2) + '\n'


def _render(reports, out: str, summary=None) -> str:
    if out == 'csv':
        return reports_to_csv(reports)
    if summary is None:
        return reports_to_json(reports) + '\n'
    return json.dumps({
        'reports': json.loads(reports_to_json(reports)),
        'summary': {k: None if v is None else str(v) for k, v in summary.items()},
    }, indent=2) + '\n'


def _run_experiment(args, config, log_capture) -> str:
    agent = ExperimentAgent(config)
    space = agent.space(_kind(args), args.n)
    if args.mode == 'truncated':
        report = agent.exhaustive_truncated_density(space, args.m, _require(args, 't'),
                                                    args.workers, log_capture)
    elif args.mode == 'mc':
        exp_cfg = config['experiment']
        trials = args.trials or exp_cfg['default_trials']
        seed = exp_cfg['default_seed'] if args.seed is None else args.seed
        report = agent.monte_carlo_density(space, args.m, trials, seed, args.workers, log_capture)
    else:
        report = agent.exhaustive_density(space, args.m, args.workers, log_capture)
    return _render([report], args.out)


def _run_scan(args, config, log_capture) -> str:
    agent = ExperimentAgent(config)
    reports = agent.convergence_scan(_kind(args), range(args.n_min, args.n_max + 1), args.m,
                                     _MODES[args.mode], args.trials, args.seed, args.workers, log_capture)
    summary = scan_summary(reports)
    if reports:
        log_capture.add(f"Scan: final deviation {summary['final_deviation']}, "
                        f"upper-half range [{summary['inf']}, {summary['sup']}]", "INFO")
    return _render(reports, args.out, summary)


def _run_places(args, config, log_capture) -> str:
    rows = CurveAgent(config).place_rows(parse_curve(args.curve), args.dmax)
    log_capture.add(f"✓ {len(rows)} affine places up to degree {args.dmax}", "SUCCESS")
    return rows_to_csv(rows, PLACE_HEADER)


def _run_count(args, config, log_capture) -> str:
    rows = CurveAgent(config).count_table(parse_curve(args.curve), args.dmax, not args.no_verify,
                                          args.workers, log_capture)
    return rows_to_csv(rows, COUNT_HEADER)


def _run_coprime(args, config, log_capture) -> str:
    F = parse_field(args.q)
    if not F.is_prime:
        raise InputError(f"polynomial text form needs a prime field, got q={args.q}")
    if len(args.polys) < 2:
        raise InputError("--polys needs at least two polynomials")
    polys = [parse_poly(F, text) for text in args.polys]
    g = reduce(gcd, polys)
    coprime = not g.is_zero() and g.degree == 0
    log_capture.add(f"{'✓' if coprime else '⚠️'} gcd = {g!r}", "SUCCESS" if coprime else "INFO")
    return json.dumps({
        'q': F.order,
        'polys': [format_poly(f) for f in polys],
        'gcd': format_poly(g),
        'coprime': coprime,
    }, indent=2) + '\n'


def _run_crosscheck(args, config, log_capture) -> str:
    kind = parse_curve(_require(args, 'curve')) if args.space == 'elliptic' else _require(args, 'q')
    result = CrossCheckAgent(config).summary(kind, args.n, args.m, args.trials, args.seed,
                                             args.scan, log_capture)
    return json.dumps(result, indent=2) + '\n'


_COMMANDS = {
    'density': _run_density,
    'experiment': _run_experiment,
    'scan': _run_scan,
    'places': _run_places,
    'count': _run_count,
    'coprime': _run_coprime,
    'crosscheck': _run_crosscheck,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    log_capture = None
    try:
        config = load_config(args.config)
        setup_logging(config)
        log_capture = LogCapture(config)
        if args.workers is not None and args.workers < 1:
            raise InputError(f"--workers must be >= 1, got {args.workers}")
        output = _COMMANDS[args.command](args, config, log_capture)
    except GuardLimitExceeded as e:
        _report_error(log_capture, f"⚠️ Refused: {e}")
        return EXIT_GUARD
    except HolodenseError as e:
        _report_error(log_capture, f"❌ ERROR: {e}")
        return EXIT_ERROR
    except Exception as e:
        _report_error(log_capture, f"❌ Unexpected {type(e).__name__}: {e}")
        return EXIT_ERROR

    sys.stdout.write(output)
    return EXIT_OK


def _report_error(log_capture, message: str):
    if log_capture:
        log_capture.add(message, "ERROR")
    else:
        print(message, file=sys.stderr)
