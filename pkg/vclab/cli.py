"""
Command line interface for vclab.

Every command reads concept space and scheme files, runs one operation
and writes a single JSON object (CSV for fig31) to standard output or
to the file given with --out. A concept space argument '-' reads
standard input, so fixtures can be piped into other commands:

    vclab gen paper-example 2.4.6 | vclab find-scheme --size 1

Exit codes are 0 when the command ran and every checked property
holds, 1 when a checked property fails and 2 for usage, input and cap
errors.
"""

import argparse
from collections import OrderedDict
from dataclasses import dataclass
import json
import logging
import math
import os
import sys

from .compression import CompressionScheme, verify_scheme
from .conceptspace import ConceptSpace
from .exceptions import (CapExceededError, InfeasibleCopiesError,
    VerificationError)
from .pacsim import Distribution, PacExperiment
from .read.schemefile import read_scheme
from .read.spacefile import read_space
from .relationspace import to_relation, find_embedding
from .solver import solve_scheme
from .stats.bounds import (BoundQuery, bound_value, optimize_beta,
    figure31_data, check_884, copies_feasible, minimal_copies, binom_leq)
from .stats.vcdim import vc_dimension, is_shattered, is_maximum, is_maximal
from .transforms import (to_labelled, restrict_scheme, widen_to_copies,
    cover_to_copy_scheme)
from .data import fixtures
from .version import __version__

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SEED_VARIABLE = 'VCLAB_SEED'


@dataclass
class CommandResult:
    """
    Outcome of a command

    Attributes
    ----------
    status : {'ok','violation','error'}
    payload : OrderedDict or str
        JSON report, or CSV text for fig31
    exit_code : int
        0 ok, 1 violation, 2 error
    out : str, optional
        file to write the output to instead of standard output
    """
    status: str
    payload: object
    exit_code: int
    out: str = None

    def text(self):
        """Return output text"""
        if isinstance(self.payload, str):
            return self.payload
        return json.dumps(self.payload) + '\n'


class UsageError(Exception):
    """Command line arguments that argparse rejects"""


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(message)


def _names(text):
    """Return list of point names from 'a,b,c'"""
    return [name.strip() for name in text.split(',') if name.strip()]


def _ints(text):
    return [int(value) for value in _names(text)]


def _points(text):
    """Return list of (x, y) from 'x1,y1;x2,y2'"""
    points = []
    for item in text.split(';'):
        if not item.strip():
            continue
        values = _names(item)
        if len(values) != 2:
            raise ValueError(f'point "{item}" is not of the form x,y')
        points.append((float(values[0]), float(values[1])))
    return points


def _report(command, *items, **fields):
    report = OrderedDict()
    report['schema_version'] = SCHEMA_VERSION
    report['command'] = command
    for item in items:
        report.update(item)
    report.update(fields)
    return report


def _ok(payload):
    return CommandResult('ok', payload, 0)


def _checked(payload, holds):
    if holds:
        return CommandResult('ok', payload, 0)
    return CommandResult('violation', payload, 1)


def _default_seed():
    value = os.environ.get(SEED_VARIABLE)
    if value is None:
        return 0
    try:
        return int(value)
    except ValueError:
        raise ValueError(f'{SEED_VARIABLE}="{value}" is not an integer') from None


# corespace and vcdim

def cmd_vc(args):
    space = read_space(args.space)
    report = vc_dimension(space, coefficients=not args.no_coefficients)
    return _ok(_report('vc', report.to_dict()))


def cmd_shatter(args):
    space = read_space(args.space)
    subset = _names(args.subset)
    return _ok(_report('shatter', subset=subset,
        shattered=is_shattered(space, subset)))


def cmd_check_maximum(args):
    space = read_space(args.space)
    return _ok(_report('check-maximum', d=args.d, mode=args.mode,
        n_concepts=len(space.distinct()),
        binom_leq=binom_leq(space.n_points, args.d),
        maximum=is_maximum(space, args.d, mode=args.mode)))


def cmd_check_maximal(args):
    space = read_space(args.space)
    return _ok(_report('check-maximal', d=args.d,
        maximal=is_maximal(space, args.d)))


def cmd_dual(args):
    space = read_space(args.space)
    rs = to_relation(space, reduce=args.reduce)
    return _ok(_report('dual', rs.dual().to_space(dedup=False).to_dict()))


def cmd_find_embedding(args):
    src = to_relation(read_space(args.source), reduce=args.reduce)
    dst = to_relation(read_space(args.target), reduce=args.reduce)
    emap = find_embedding(src, dst, generalized=args.generalized)
    if emap is None:
        return _ok(_report('find-embedding', found=False))
    row_map = OrderedDict((src.left[x], dst.left[xp])
        for x, xp in enumerate(emap.row_map))
    col_map = OrderedDict((src.right[y], dst.right[yp])
        for y, yp in enumerate(emap.col_map))
    flip = None if emap.flip is None else list(emap.flip)
    return _ok(_report('find-embedding', found=True, generalized=args.generalized,
        row_map=row_map, col_map=col_map, flip=flip))


# compression schemes

def cmd_verify_scheme(args):
    space = read_space(args.space)
    scheme = read_scheme(args.scheme, space)
    ok, counterexample = verify_scheme(space, scheme)
    payload = _report('verify-scheme', ok=ok,
        counterexample=None if ok else counterexample.to_dict())
    return _checked(payload, ok)


def cmd_find_scheme(args):
    space = read_space(args.space)
    copies = None if args.copies is None else _ints(args.copies)
    kind = 'labelled' if args.labelled else 'unlabelled'
    result = solve_scheme(space, args.size, copies=copies, kind=kind,
        max_nodes=args.max_nodes)
    # wall time is left out so reports are byte-stable
    stats = OrderedDict((key, value) for key, value in sorted(result.stats.items())
        if key != 'wall_time')
    payload = _report('find-scheme', status=result.status,
        scheme=None if result.scheme is None else result.scheme.to_dict(),
        stats=stats)
    if result.status == 'CAP_EXCEEDED':
        return CommandResult('error', payload, 2)
    return _ok(payload)


def cmd_to_labelled(args):
    space = read_space(args.space)
    scheme = to_labelled(space, read_scheme(args.scheme, space))
    return _ok(_report('to-labelled', scheme.to_dict()))


def cmd_restrict_scheme(args):
    space = read_space(args.space)
    subset = _names(args.subset)
    scheme = restrict_scheme(space, read_scheme(args.scheme, space), subset)
    return _ok(_report('restrict-scheme',
        space=space.restrict(subset).to_dict(), scheme=scheme.to_dict()))


def cmd_widen(args):
    space = read_space(args.space)
    scheme = read_scheme(args.scheme, space)
    m, d = space.n_points, scheme.size
    feasible = copies_feasible(m, d, args.k, args.n)
    fields = OrderedDict([('m', m), ('d', d), ('k', args.k), ('n', args.n),
        ('feasible', feasible), ('minimal_n', minimal_copies(m, d, args.k))])
    if args.feasibility_only:
        return _checked(_report('widen', fields), feasible)

    widened = widen_to_copies(space, scheme, args.k, args.n)
    if widened is None:
        return _checked(_report('widen', fields, matching_failed=True,
            scheme=None), False)
    return _ok(_report('widen', fields, matching_failed=False,
        scheme=widened.to_dict()))


def cmd_cover_scheme(args):
    space = read_space(args.space)
    parts = []
    for filepath in args.parts:
        with open(filepath, encoding='utf-8') as f:
            part = json.load(f)
        if not isinstance(part, dict) or 'space' not in part or 'scheme' not in part:
            raise ValueError(f'part file {filepath} needs "space" and "scheme" fields')
        part_space = ConceptSpace.from_dict(part['space'])
        part_scheme = CompressionScheme.from_dict(part['scheme'],
            part_space.domain)
        parts.append((part_space, part_scheme))
    scheme = cover_to_copy_scheme(space, parts)
    return _ok(_report('cover-scheme', scheme.to_dict()))


# bounds

def cmd_bounds(args):
    query = BoundQuery(args.eps, args.delta, args.d, n_copies=args.n,
        beta=args.beta)
    if args.optimize:
        beta, value = optimize_beta(args.which, query)
    else:
        beta, value = args.beta, bound_value(args.which, query)
    return _ok(_report('bounds', which=args.which, epsilon=args.eps,
        delta=args.delta, d=args.d, n=args.n, beta=beta, value=value,
        sample_size=math.ceil(value)))


def cmd_fig31(args):
    frame = figure31_data(args.eps, args.delta, args.dmax)
    holds = bool((frame['f'] < frame['g']).all())
    if not holds:
        logger.warning('compression bound f(d) is not below g(d) for every d')
    return _checked(frame.to_csv(index=False), holds)


def cmd_check_884(args):
    report = check_884()
    return _checked(_report('check-884', report), report['ok'])


# simulation

def cmd_simulate(args):
    space = read_space(args.space)
    scheme = read_scheme(args.scheme, space)
    if not 0 <= args.target < space.n_concepts:
        raise ValueError((f'target index {args.target} is out of range, '
            f'space has {space.n_concepts} concepts'))
    target = space.concepts[args.target]
    if args.dist == 'uniform':
        dist = Distribution.uniform(space)
    else:
        dist = Distribution.from_json(space, args.dist)
    seed = _default_seed() if args.seed is None else args.seed

    experiment = PacExperiment(space, scheme, target, dist, args.m, args.eps,
        args.trials, seed=seed, threads=args.threads)
    report = experiment.run(args.kind)
    return _checked(_report('simulate', report.to_dict()), report.within_bound)


# fixtures

def cmd_gen(args):
    if args.family == 'power-set':
        space, scheme = fixtures.power_set(args.n), None
    elif args.family == 'initial-segments':
        space = fixtures.initial_segments(args.n, empty=not args.no_empty)
        scheme = fixtures.initial_segment_scheme(space) if not args.no_empty else None
    elif args.family == 'final-segments':
        space = fixtures.final_segments(args.n)
        scheme = fixtures.final_segment_scheme(space)
    elif args.family == 'size-at-most-d':
        space, scheme = fixtures.size_at_most(args.n, args.d), None
    elif args.family == 'rectangles':
        space, scheme = fixtures.rectangles(_points(args.points)), None
    elif args.family == 'paper-example':
        space, scheme = fixtures.named_example(args.example_id, n=args.n,
            variant=args.variant)
    else:
        return _ok(_report('gen', examples=fixtures.named_examples(n=args.n)))

    if args.scheme:
        if scheme is None:
            raise ValueError(f'fixture {args.family} has no scheme')
        return _ok(_report('gen', scheme.to_dict()))
    return _ok(_report('gen', space.to_dict()))


def _add_common(parser):
    parser.add_argument('--out', default=None,
        help='write output to this file instead of standard output')
    parser.add_argument('--threads', type=int, default=1,
        help='maximum number of worker threads')
    parser.add_argument('-v', '--verbose', action='store_true',
        help='log debug messages to standard error')


def build_parser():
    """Return argparse parser with one subparser per command"""
    parser = _Parser(prog='vclab',
        description='VC dimension and sample compression workbench')
    parser.add_argument('--version', action='version',
        version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        _add_common(p)
        p.set_defaults(func=func)
        return p

    def space_arg(p):
        p.add_argument('space', nargs='?', default='-',
            help="concept space file, '-' for standard input")

    p = command('vc', cmd_vc,
        'VC dimension, witness and shatter coefficients (cap 24 points)')
    space_arg(p)
    p.add_argument('--no-coefficients', action='store_true')

    p = command('shatter', cmd_shatter, 'test whether a subset is shattered')
    space_arg(p)
    p.add_argument('--subset', required=True, help='point names a,b,c')

    p = command('check-maximum', cmd_check_maximum,
        'test the d-maximum property (definition mode cap 16 points)')
    space_arg(p)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--mode', choices=['definition', 'cardinality'],
        default='definition')

    p = command('check-maximal', cmd_check_maximal,
        'test the d-maximal property (cap 16 points)')
    space_arg(p)
    p.add_argument('--d', type=int, required=True)

    p = command('dual', cmd_dual, 'dual concept space')
    space_arg(p)
    p.add_argument('--reduce', action='store_true',
        help='collapse identical points and concepts first')

    p = command('find-embedding', cmd_find_embedding,
        'search an embedding of one relation space into another')
    p.add_argument('source')
    p.add_argument('target')
    p.add_argument('--generalized', action='store_true')
    p.add_argument('--reduce', action='store_true')

    p = command('verify-scheme', cmd_verify_scheme,
        'verify a compression scheme (cap 16 points)')
    space_arg(p)
    p.add_argument('--scheme', required=True)

    p = command('find-scheme', cmd_find_scheme,
        'search a compression scheme (cap 12 points)')
    space_arg(p)
    p.add_argument('--size', type=int, required=True)
    p.add_argument('--copies', default=None, help='copy counts n0,n1,...')
    p.add_argument('--labelled', action='store_true')
    p.add_argument('--max-nodes', type=int, default=None)

    p = command('to-labelled', cmd_to_labelled,
        'labelled scheme from an unlabelled scheme')
    space_arg(p)
    p.add_argument('--scheme', required=True)

    p = command('restrict-scheme', cmd_restrict_scheme,
        'restrict a scheme to a subspace')
    space_arg(p)
    p.add_argument('--scheme', required=True)
    p.add_argument('--subset', required=True, help='point names a,b,c')

    p = command('widen', cmd_widen,
        'copy scheme of smaller size from a plain scheme')
    space_arg(p)
    p.add_argument('--scheme', required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--feasibility-only', action='store_true')

    p = command('cover-scheme', cmd_cover_scheme,
        'copy scheme from schemes of classes covering the space')
    p.add_argument('space')
    p.add_argument('parts', nargs='+',
        help='files with "space" and "scheme" fields')

    p = command('bounds', cmd_bounds, 'sample complexity bound')
    p.add_argument('--which', required=True,
        choices=['blumer', 'shawe_taylor', 'floyd_warmuth', 'copy', 'fw', 'st'])
    p.add_argument('--eps', type=float, required=True)
    p.add_argument('--delta', type=float, required=True)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--n', type=int, default=None)
    group = p.add_mutually_exclusive_group()
    group.add_argument('--beta', type=float, default=None)
    group.add_argument('--optimize', action='store_true')

    p = command('fig31', cmd_fig31,
        'CSV of optimized compression and consistent learner bounds')
    p.add_argument('--eps', type=float, default=0.05)
    p.add_argument('--delta', type=float, default=0.05)
    p.add_argument('--dmax', type=int, default=50)

    command('check-884', cmd_check_884,
        'copy scheme sample size for 884 points')

    p = command('simulate', cmd_simulate, 'Monte Carlo check of a tail bound')
    p.add_argument('kind', choices=PacExperiment.KINDS)
    p.add_argument('--space', required=True)
    p.add_argument('--scheme', required=True)
    p.add_argument('--target', type=int, required=True,
        help='index of the target concept')
    p.add_argument('--dist', default='uniform',
        help="'uniform' or a distribution file")
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--eps', type=float, required=True)
    p.add_argument('--trials', type=int, required=True)
    p.add_argument('--seed', type=int, default=None,
        help=f'default from {SEED_VARIABLE} or 0')

    p = command('gen', cmd_gen, 'generate fixture spaces and schemes')
    p.add_argument('family', choices=['power-set', 'initial-segments',
        'final-segments', 'size-at-most-d', 'rectangles', 'paper-example',
        'paper-examples'])
    p.add_argument('example_id', nargs='?', default=None,
        choices=fixtures.EXAMPLE_IDS)
    p.add_argument('--n', type=int, default=6)
    p.add_argument('--d', type=int, default=1)
    p.add_argument('--no-empty', action='store_true')
    p.add_argument('--variant', choices=['plain', 'complement', 'mixed'],
        default='plain')
    p.add_argument('--points', default='', help='x1,y1;x2,y2;...')
    p.add_argument('--scheme', action='store_true',
        help="emit the fixture's scheme instead of its space")

    return parser


def _error(command, err, exit_code=2, status='error'):
    logger.error(f'{command}: {err}')
    payload = _report(command, error=type(err).__name__, message=str(err))
    return CommandResult(status, payload, exit_code)


def dispatch(argv):
    """Run a command line and return CommandResult

    Parameters
    ----------
    argv : list of str
        arguments without the program name

    Returns
    -------
    CommandResult
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        return _error('usage', err)
    except SystemExit as err:
        # --help and --version
        return CommandResult('ok', '', 0 if not err.code else 2)

    if args.command is None:
        return _error('usage', UsageError('no command given'))
    if args.command == 'gen' and args.family == 'paper-example' \
            and args.example_id is None:
        return _error('gen', UsageError('paper-example needs an example id'))

    if args.verbose:
        logging.getLogger('vclab').setLevel(logging.DEBUG)

    try:
        result = args.func(args)
    except (VerificationError, InfeasibleCopiesError) as err:
        result = _error(args.command, err, exit_code=1, status='violation')
    except CapExceededError as err:
        result = _error(args.command, err)
    except (ValueError, TypeError, KeyError, OSError) as err:
        result = _error(args.command, err)

    result.out = args.out
    return result


def main(argv=None):
    """Console entry point"""
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s')
    result = dispatch(sys.argv[1:] if argv is None else argv)
    text = result.text()
    if result.out is not None:
        with open(result.out, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
