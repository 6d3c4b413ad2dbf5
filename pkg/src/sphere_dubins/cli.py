import argparse
import logging
import sys
import traceback

from . import __version__, sdlogger
from .constants import CheckStatus, ExitCodes
from .exceptions import DomainError, InconsistentSolution, InvalidInstance
from .instance import InstanceFile, InstanceOptions, read_instance
from .oracle import make_grid, oracle_search
from .planner import plan
from .report import format_plan_text, format_waypoints, make_waypoints, oracle_section, plan_report, to_json
from .utils import write_text_file
from .verification import run_verification

clilogger = logging.getLogger('sphere-dubins.cli')

DEFAULT_SAMPLES = 100


def get_parser():
    parser = argparse.ArgumentParser(prog='sphere-dubins',
                                     description='Shortest curvature-bounded paths on the unit sphere, '
                                                 'free final heading.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--verbose', action='store_true', default=False, help='Debug logging on stderr.')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    def instance_flags(p):
        p.add_argument('--instance', default=None, help='YAML or JSON instance file.')
        p.add_argument('--r', default=None, help='Tight-turn radius.')
        p.add_argument('--target', default=None, help='Target location x,y,z.')
        p.add_argument('--r0', default=None, help='Initial configuration, 9 comma-separated entries, row-major.')

    def output_flags(p, default_json=True):
        g = p.add_mutually_exclusive_group()
        g.add_argument('--json', dest='json', action='store_true', default=default_json)
        g.add_argument('--text', dest='json', action='store_false')

    def report_flags(p):
        p.add_argument('--sorted', action='store_true', default=False, help='Candidates by ascending length.')
        p.add_argument('--degrees', action='store_true', default=False, help='Angles in degrees (text only).')

    p = sub.add_parser('plan', help='Candidate paths and the shortest one.')
    instance_flags(p)
    output_flags(p)
    report_flags(p)
    p.add_argument('--samples', type=int, default=None, help='Include this many waypoints in the report.')

    p = sub.add_parser('oracle', help='Plan, then certify with a brute-force search.')
    instance_flags(p)
    output_flags(p)
    report_flags(p)
    p.add_argument('--grid-step', dest='grid_step', type=float, default=None)
    p.add_argument('--max-segments', dest='max_segments', type=int, default=None)
    p.add_argument('--refine-tol', dest='refine_tol', type=float, default=None)
    p.add_argument('--processes', type=int, default=1)

    p = sub.add_parser('verify', help='Numerical checks of the optimality conditions.')
    output_flags(p, default_json=False)
    p.add_argument('--tolerance', type=float, default=None, help='Replaces every check tolerance.')
    p.add_argument('--dl-samples', dest='dl_samples', type=int, default=1000)

    p = sub.add_parser('sample', help='Waypoints along the shortest path.')
    instance_flags(p)
    p.add_argument('--samples', type=int, default=None)
    p.add_argument('--out', default=None, help='Output file; standard output by default.')
    return parser


def get_instance(parsed):
    if parsed.instance is not None:
        if parsed.r is not None or parsed.target is not None or parsed.r0 is not None:
            msg = 'Use either --instance or --r/--target/--r0, not both.'
            raise InvalidInstance(msg)
        return read_instance(parsed.instance)
    return InstanceFile.from_flags(parsed.r, parsed.target, parsed.r0, InstanceOptions())


def _samples(parsed, instance):
    n = parsed.samples if parsed.samples is not None else instance.options.samples
    if n is not None and n < 2:
        msg = 'samples must be >= 2, got %r' % n
        raise DomainError(msg)
    return n


def _render(parsed, data):
    if parsed.json:
        return to_json(data)
    return format_plan_text(data, degrees=parsed.degrees)


def cmd_plan(parsed, out):
    instance = get_instance(parsed)
    p = plan(instance.r0, instance.target, instance.r)
    n = _samples(parsed, instance)
    waypoints = None if n is None else make_waypoints(instance.r0, p.optimal_candidate, n)
    data = plan_report(instance, p, sorted_by_length=parsed.sorted, waypoints=waypoints)
    out.write(_render(parsed, data))
    return ExitCodes.SUCCESS


def cmd_oracle(parsed, out):
    instance = get_instance(parsed)
    options = instance.options

    def pick(flag, option):
        return flag if flag is not None else option

    grid = make_grid(max_segments=pick(parsed.max_segments, options.max_segments),
                     angle_step=pick(parsed.grid_step, options.grid_step),
                     refine_tol=pick(parsed.refine_tol, options.refine_tol))
    if parsed.processes < 1:
        msg = 'processes must be >= 1, got %r' % parsed.processes
        raise DomainError(msg)

    p = plan(instance.r0, instance.target, instance.r)
    clilogger.info('Searching %d-segment words at step %.3g' % (grid.max_segments, grid.angle_step))
    res = oracle_search(instance.r0, instance.target, instance.r, grid=grid, processes=parsed.processes)
    data = plan_report(instance, p, sorted_by_length=parsed.sorted)
    data['oracle'] = oracle_section(res, p)
    out.write(_render(parsed, data))
    return ExitCodes.SUCCESS


def cmd_verify(parsed, out):
    if parsed.dl_samples < 1:
        msg = 'dl-samples must be >= 1, got %r' % parsed.dl_samples
        raise DomainError(msg)
    report = run_verification(tolerance=parsed.tolerance, dl_samples=parsed.dl_samples)
    if parsed.json:
        out.write(to_json(report.to_yaml()))
    else:
        out.write(report.as_text())
    if report.get_status() == CheckStatus.PASS:
        return ExitCodes.SUCCESS
    for c in report.failed():
        clilogger.error('check failed: %s' % c.as_line())
    return ExitCodes.CHECKS_FAILED


def cmd_sample(parsed, out):
    instance = get_instance(parsed)
    n = _samples(parsed, instance)
    if n is None:
        n = DEFAULT_SAMPLES
    p = plan(instance.r0, instance.target, instance.r)
    rows = make_waypoints(instance.r0, p.optimal_candidate, n)
    text = format_waypoints(rows)
    if parsed.out is None:
        out.write(text)
    else:
        write_text_file(text, parsed.out)
        clilogger.info('Wrote %d waypoints to %s' % (n, parsed.out))
    return ExitCodes.SUCCESS


COMMANDS = {
    'plan': cmd_plan,
    'oracle': cmd_oracle,
    'verify': cmd_verify,
    'sample': cmd_sample,
}


def wrap_command(f, parsed, out):
    """ Runs a command and maps exceptions onto exit codes. """
    try:
        return f(parsed, out)
    except (DomainError, InvalidInstance) as e:
        clilogger.error('%s' % e)
        return ExitCodes.INPUT_ERROR
    except InconsistentSolution as e:
        clilogger.error('Internal consistency failure:\n%s' % e)
        return ExitCodes.INTERNAL_ERROR
    except Exception:
        msg = 'Unexpected exception:\n%s' % traceback.format_exc()
        clilogger.error(msg)
        return ExitCodes.INTERNAL_ERROR


def main(args=None, out=None):
    """ Returns the exit code instead of exiting. """
    if out is None:
        out = sys.stdout
    parser = get_parser()
    try:
        parsed = parser.parse_args(args)
    except SystemExit as e:
        return ExitCodes.INPUT_ERROR if e.code else ExitCodes.SUCCESS

    if parsed.verbose:
        sdlogger.setLevel(logging.DEBUG)
    sdlogger.debug('sphere-dubins %s: %s' % (__version__, parsed.command))
    return wrap_command(COMMANDS[parsed.command], parsed, out)


def sphere_dubins_main():
    sys.exit(main())

