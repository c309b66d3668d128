"""
Interpolation subcommands: interp, chart
"""

import logging
from pathlib import Path
from typing import Callable, List, Optional

import numpy as np

from waldron.cli.common import (
    EXIT_OK,
    add_output_arguments,
    check_output_arguments,
    default_simplex_name,
    numbered,
    parse_vector,
    require,
)
from waldron.cli.generate import build_nodes
from waldron.models.simplex import Simplex
from waldron.models.weights import weight_from_spec
from waldron.services.analysis import barycentric_lattice
from waldron.services.baryweights import BaryweightChart
from waldron.services.interp import Interpolant, sample_function
from waldron.services.points import NodeFamily
from waldron.utils.constants import SCHEME_NAMES
from waldron.utils.errors import DomainError
from waldron.utils.io import read_table, write_output
from waldron.utils.validators import validate_family, validate_point, validate_scheme, validate_weight

logger = logging.getLogger(__name__)

BUILTIN_FUNCTIONS = ['f1', 'one']
NODE_MATCH_TOL = 1e-9


def register(subparsers):
    interp = subparsers.add_parser('interp', help='Interpolate a function on a node family',
                                   description='Interpolate a built-in function or node values read from CSV, '
                                               'then sample the interpolant at points or on a lattice')
    interp.add_argument('--family', required=True, help='simplex | waldron | waldron3d | concentric')
    interp.add_argument('--weight', default='cosine', help='Weight of the Waldron families')
    interp.add_argument('--degree', type=int, required=True, help='Polynomial degree n')
    interp.add_argument('--dim', type=int, default=None, help='Dimension d (default: from the family, else 2)')
    interp.add_argument('--simplex', default=None, help='equilateral2d | centred3d | unit<d> | vertices.csv')
    interp.add_argument('--scheme', default='polynomial', help=f"One of: {', '.join(SCHEME_NAMES)}")
    interp.add_argument('--fn', '--function', dest='fn', default='f1',
                        help="Built-in f1 = sin(pi (x^2 + y^2)) or one = 1, or a CSV with a 'value' "
                             "column in node order (optional x_1.. columns are checked against the nodes)")
    points = interp.add_mutually_exclusive_group()
    points.add_argument('--at', action='append', default=None,
                        help='Evaluation point x,y[,z] (repeatable)')
    points.add_argument('--random', type=int, default=None,
                        help='Number of random evaluation points (seeded by --seed; default 100)')
    points.add_argument('--grid', type=int, default=None,
                        help='Sample on the barycentric lattice with M subdivisions (x,y,value rows)')
    add_output_arguments(interp)
    interp.set_defaults(handler=run_interp, validate=validate_interp, parser=interp,
                        radii=None, full_sphere=False, preview=None)

    chart = subparsers.add_parser('chart', help='Baryweight chart forward and inverse',
                                  description='Map baryweight parameters theta to barycentric '
                                              'coordinates, or invert the map at given points')
    chart.add_argument('--simplex', default='equilateral2d', help='equilateral2d | centred3d | unit<d> | vertices.csv')
    chart.add_argument('--weight', default='cosine', help='Allowable weight')
    group = chart.add_mutually_exclusive_group(required=True)
    group.add_argument('--theta', action='append', help='theta_1,...,theta_{d+1} on the unit simplex (repeatable)')
    group.add_argument('--point', action='append', help='Cartesian point to invert (repeatable)')
    group.add_argument('--input', default=None,
                       help='CSV point list with theta_1.. (forward), lambda_1.. or x_1.. (inverse) columns')
    add_output_arguments(chart)
    chart.set_defaults(handler=run_chart, validate=validate_chart, parser=chart)


def validate_interp(args):
    check_output_arguments(args)
    if args.dim is None:
        args.dim = 3 if args.family.startswith('waldron3d') else 2
    require(args, '--family', validate_family(args.family, args.dim))
    if args.family.startswith('spherical'):
        args.parser.error("--family: spherical points are not an interpolation family")
    family, _, weight_spec = args.family.partition(':')
    if weight_spec:
        args.family, args.weight = family, weight_spec
    require(args, '--weight', validate_weight(args.weight))
    require(args, '--scheme', validate_scheme(args.scheme))
    if args.degree < 0:
        args.parser.error(f"--degree: must be >= 0, got {args.degree}")
    if args.fn not in BUILTIN_FUNCTIONS and Path(args.fn).suffix != '.csv':
        args.parser.error(f"--fn: expected one of {', '.join(BUILTIN_FUNCTIONS)} or a .csv file, got '{args.fn}'")
    if args.random is not None and args.random < 1:
        args.parser.error(f"--random: must be >= 1, got {args.random}")
    if args.grid is not None and args.grid < 1:
        args.parser.error(f"--grid: must be >= 1, got {args.grid}")
    for text in args.at or []:
        require(args, '--at', validate_point(text, args.dim))


def coordinate_names(d: int) -> List[str]:
    return ['x', 'y', 'z'][:d] if d <= 3 else numbered('x', d)


def node_values(path: str, nodes: NodeFamily) -> np.ndarray:
    """
    Values at the nodes from a CSV file

    The 'value' column follows the node order of `gen`. When x_1..x_d
    columns are present they must match the node coordinates.
    """
    header, data = read_table(path)
    if 'value' not in header:
        raise DomainError(f"{path} has no 'value' column")
    if len(data) != len(nodes):
        raise DomainError(f"{path} has {len(data)} rows, the {nodes.label} family of degree "
                          f"{nodes.degree} has {len(nodes)} nodes")

    coords = numbered('x', nodes.dim)
    if all(name in header for name in coords):
        given = data[:, [header.index(name) for name in coords]]
        if not np.allclose(given, nodes.cartesian, atol=NODE_MATCH_TOL, rtol=0.0):
            raise DomainError(f"Coordinates in {path} do not match the {nodes.label} nodes")

    values = data[:, header.index('value')]
    if not np.all(np.isfinite(values)):
        raise DomainError(f"{path} has missing or non-finite values")
    return values


def evaluation_points(args, simplex: Simplex) -> np.ndarray:
    if args.at:
        return np.array([parse_vector(text) for text in args.at])
    if args.grid:
        return simplex.from_barycentric(barycentric_lattice(args.grid, simplex.dim))
    rng = np.random.default_rng(args.seed)
    lam = rng.dirichlet(np.ones(simplex.dim + 1), size=args.random or 100)
    return simplex.from_barycentric(lam)


def run_interp(args) -> int:
    nodes = build_nodes(args)
    func: Optional[Callable] = None
    if args.fn in BUILTIN_FUNCTIONS:
        func = sample_function(args.fn)
        values = func(nodes.cartesian)
    else:
        values = node_values(args.fn, nodes)
    interpolant = Interpolant(args.scheme, nodes, values)
    scheme = interpolant.scheme.value

    x = evaluation_points(args, nodes.simplex)
    sampled = interpolant(x)
    header = coordinate_names(nodes.dim) + ['value']
    extra = {'family': nodes.label, 'scheme': scheme, 'degree': nodes.degree, 'function': args.fn}

    if args.grid or func is None:
        header += ['scheme']
        rows = [list(p) + [v, scheme] for p, v in zip(x, sampled)]
        logger.info(f"✅ {scheme} interpolant on {nodes.label} n={nodes.degree} sampled at {len(x)} points")
    else:
        exact = func(x)
        errors = np.abs(sampled - exact)
        header += ['exact', 'error', 'scheme']
        rows = [list(p) + [v, e, err, scheme] for p, v, e, err in zip(x, sampled, exact, errors)]
        extra['max_error'] = float(errors.max())
        logger.info(f"✅ {scheme} interpolant on {nodes.label} n={nodes.degree}: "
                    f"max error {errors.max():.3e} at {len(x)} points")

    write_output(args.format, header, rows, args.output, extra)
    return EXIT_OK


def validate_chart(args):
    check_output_arguments(args)
    require(args, '--weight', validate_weight(args.weight))


def _columns(header: List[str], prefix: str, count: int) -> Optional[List[int]]:
    names = numbered(prefix, count)
    if all(name in header for name in names):
        return [header.index(name) for name in names]
    return None


def chart_input(path: str, d: int):
    """('theta' | 'lambda' | 'x', array) from a CSV point list"""
    header, data = read_table(path)
    for prefix, count in (('theta', d + 1), ('lambda', d + 1), ('x', d)):
        columns = _columns(header, prefix, count)
        if columns is not None:
            values = data[:, columns]
            if not np.all(np.isfinite(values)):
                raise DomainError(f"{path} has missing or non-finite {prefix} values")
            return prefix, values
    raise DomainError(f"{path} needs theta_1..theta_{d + 1}, lambda_1..lambda_{d + 1} or x_1..x_{d} columns")


def run_chart(args) -> int:
    simplex = Simplex.from_spec(args.simplex or default_simplex_name(2))
    chart = BaryweightChart(simplex, weight_from_spec(args.weight))
    d = simplex.dim

    if args.input:
        kind, values = chart_input(args.input, d)
    elif args.theta:
        for text in args.theta:
            require(args, '--theta', validate_point(text, d + 1))
        kind, values = 'theta', np.array([parse_vector(text) for text in args.theta])
    else:
        for text in args.point:
            require(args, '--point', validate_point(text, d))
        kind, values = 'x', np.array([parse_vector(text) for text in args.point])

    if kind == 'theta':
        lam = chart.forward(values)
        x = simplex.from_barycentric(lam)
        header = numbered('theta', d + 1) + numbered('lambda', d + 1) + numbered('x', d)
        rows = [list(t) + list(lm) + list(p) for t, lm, p in zip(values, lam, x)]
    else:
        if kind == 'x':
            x, lam = values, simplex.to_barycentric(values)
        else:
            lam, x = values, simplex.from_barycentric(values)
        theta, shift = chart.invert(lam, return_shift=True)
        header = numbered('x', d) + numbered('lambda', d + 1) + numbered('theta', d + 1) + ['shift']
        rows = [list(p) + list(lm) + list(t) + [c] for p, lm, t, c in zip(x, lam, theta, shift)]

    logger.info(f"✅ Chart {'forward' if kind == 'theta' else 'inverse'} at {len(rows)} points")
    write_output(args.format, header, rows, args.output, {'chart': repr(chart)})
    return EXIT_OK
