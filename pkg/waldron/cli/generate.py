"""
Node generation subcommands: gen, radii
"""

import logging
from typing import List, Optional, Tuple

from waldron.cli.common import (
    EXIT_OK,
    add_output_arguments,
    check_output_arguments,
    default_simplex_name,
    numbered,
    parse_vector,
    require,
)
from waldron.models.simplex import Simplex
from waldron.models.weights import weight_from_spec
from waldron.services.points import (
    NodeFamily,
    concentric_points,
    concentric_radii_table,
    enumerate_indices,
    optimize_concentric_radii,
    simplex_points,
    spherical_full_sphere,
    spherical_waldron_points,
    waldron_points,
    waldron_points_modified_3d,
)
from waldron.utils.constants import CONCENTRIC_RADII, FAMILY_NAMES, RADII_TABLE_VERSION
from waldron.utils.io import write_output
from waldron.utils.preview import render_scatter
from waldron.utils.validators import validate_family, validate_weight

logger = logging.getLogger(__name__)


def register(subparsers):
    gen = subparsers.add_parser('gen', help='Generate interpolation points',
                                description='Generate a node family and write one row per node')
    gen.add_argument('--family', required=True, help=f"One of: {', '.join(FAMILY_NAMES)}")
    gen.add_argument('--weight', default='cosine',
                     help='identity | cosine | quad | convex:t=<t>:<w0>:<w1> | density:file=<path>')
    gen.add_argument('--degree', type=int, required=True, help='Polynomial degree n')
    gen.add_argument('--dim', type=int, default=None, help='Dimension d (default: from the family, else 2)')
    gen.add_argument('--simplex', default=None,
                     help='equilateral2d | centred3d | unit<d> | vertices.csv')
    gen.add_argument('--radii', default=None,
                     help='Concentric ring radii, comma separated, starting with 1')
    gen.add_argument('--full-sphere', action='store_true',
                     help='Spherical family: reflect the octant set to the whole sphere')
    gen.add_argument('--preview', default=None, help='Also render a PNG scatter of the nodes')
    add_output_arguments(gen)
    gen.set_defaults(handler=run_gen, validate=validate_gen, parser=gen)

    radii = subparsers.add_parser('radii', help='Optimize concentric-triangle radii',
                                  description='Maximize |det| of the collocation matrix over the inner ring radii, '
                                              'or print the tabulated radii')
    radii.add_argument('--degree', type=int, default=None,
                       help='Degree n >= 4 (with --table: restrict the table to n)')
    radii.add_argument('--table', action='store_true', help='Print the tabulated radii instead of optimizing')
    radii.add_argument('--compare', action='store_true',
                       help='Optimize and report each inner radius next to the tabulated one')
    radii.add_argument('--start', default='auto',
                       help="auto | table | neutral | comma-separated inner radii")
    radii.add_argument('--max-iter', type=int, default=None, help='Nelder-Mead iteration limit')
    add_output_arguments(radii)
    radii.set_defaults(handler=run_radii, validate=validate_radii, parser=radii)


def _resolve_dim(args) -> int:
    if args.dim is not None:
        return args.dim
    if args.family.startswith('waldron3d'):
        return 3
    return 2


def validate_gen(args):
    check_output_arguments(args)
    args.dim = _resolve_dim(args)
    require(args, '--family', validate_family(args.family, args.dim))
    family, _, weight_spec = args.family.partition(':')
    if weight_spec:
        args.family, args.weight = family, weight_spec
    require(args, '--weight', validate_weight(args.weight))
    if args.degree < 0:
        args.parser.error(f"--degree: must be >= 0, got {args.degree}")
    if args.family == 'spherical':
        if args.degree < 1:
            args.parser.error("--degree: spherical points need n >= 1")
        if args.preview:
            args.parser.error("--preview: spherical points are not drawn")
    elif args.full_sphere:
        args.parser.error("--full-sphere: only valid with --family spherical")
    if args.radii is not None:
        if args.family != 'concentric':
            args.parser.error("--radii: only valid with --family concentric")
        try:
            args.radii = tuple(parse_vector(args.radii))
        except ValueError:
            args.parser.error(f"--radii: '{args.radii}' is not a comma-separated list of numbers")


def build_nodes(args) -> NodeFamily:
    simplex = Simplex.from_spec(args.simplex or default_simplex_name(args.dim))
    if simplex.dim != args.dim:
        args.parser.error(f"--simplex: {simplex.name} has dimension {simplex.dim}, expected {args.dim}")
    if args.family == 'simplex':
        return simplex_points(simplex, args.degree)
    if args.family == 'concentric':
        return concentric_points(args.degree, radii=args.radii, simplex=simplex)

    weight = weight_from_spec(args.weight)
    if args.family == 'waldron':
        return waldron_points(simplex, args.degree, weight)
    return waldron_points_modified_3d(simplex, args.degree, weight)


def node_table(nodes: NodeFamily) -> Tuple[List[str], List[list]]:
    """Header and rows: index columns, Cartesian, barycentric and baryweights"""
    d = nodes.dim
    if nodes.indices.shape[1] == d + 1:
        header = numbered('alpha', d + 1)
    else:
        header = ['ring', 'slot']
    header += numbered('x', d) + numbered('lambda', d + 1)
    if nodes.baryweights is not None:
        header += numbered('w', d + 1)

    rows = []
    for i in range(len(nodes)):
        row = list(nodes.indices[i]) + list(nodes.cartesian[i]) + list(nodes.barycentric[i])
        if nodes.baryweights is not None:
            row += list(nodes.baryweights[i])
        rows.append(row)
    return header, rows


def run_gen(args) -> int:
    if args.family == 'spherical':
        weight = weight_from_spec(args.weight)
        if args.full_sphere:
            points = spherical_full_sphere(args.degree, weight)
            header, rows = ['x', 'y', 'z'], [list(p) for p in points]
        else:
            points = spherical_waldron_points(args.degree, weight)
            alphas = enumerate_indices(args.degree, 2)
            header = numbered('alpha', 3) + ['x', 'y', 'z']
            rows = [list(a) + list(p) for a, p in zip(alphas, points)]
        extra = {'family': f"spherical:{weight.name}", 'degree': args.degree, 'full_sphere': args.full_sphere}
        logger.info(f"✅ Generated {len(rows)} spherical points (n={args.degree})")
        write_output(args.format, header, rows, args.output, extra)
        return EXIT_OK

    nodes = build_nodes(args)
    header, rows = node_table(nodes)
    extra = {'family': nodes.label, 'degree': nodes.degree, 'simplex': nodes.simplex.name}
    if nodes.radii is not None:
        extra['radii'] = list(nodes.radii)
    write_output(args.format, header, rows, args.output, extra)
    logger.info(f"✅ Generated {len(nodes)} {nodes.label} points (n={nodes.degree}, d={nodes.dim})")

    if args.preview:
        render_scatter(nodes, args.preview)
    return EXIT_OK


def validate_radii(args):
    check_output_arguments(args)
    if args.table:
        if args.compare:
            args.parser.error("--compare: not allowed together with --table")
        if args.degree is not None and args.degree not in CONCENTRIC_RADII:
            args.parser.error(f"--degree: the table covers 1..{max(CONCENTRIC_RADII)}, got {args.degree}")
        return
    if args.degree is None:
        args.parser.error("--degree: required unless --table is given")
    if args.degree < 4:
        args.parser.error(f"--degree: radii are forced for n < 4, got {args.degree}")
    if args.compare and args.degree not in CONCENTRIC_RADII:
        args.parser.error(f"--compare: no tabulated radii for n={args.degree}")
    if args.max_iter is not None and args.max_iter < 1:
        args.parser.error(f"--max-iter: must be >= 1, got {args.max_iter}")
    if args.start not in ('auto', 'table', 'neutral'):
        try:
            args.start = tuple(parse_vector(args.start))
        except ValueError:
            args.parser.error(f"--start: '{args.start}' is not auto, table, neutral or a radii list")


def radii_table_rows(degree: Optional[int] = None) -> Tuple[List[str], List[list]]:
    """Tabulated radii, one row per degree, padded with empty cells"""
    degrees = [degree] if degree is not None else sorted(CONCENTRIC_RADII)
    width = max(len(CONCENTRIC_RADII[n]) for n in degrees)
    header = ['n', 'points'] + [f"R{i}" for i in range(width)]
    rows = []
    for n in degrees:
        radii = list(concentric_radii_table(n))
        rows.append([n, (n + 1) * (n + 2) // 2] + radii + [None] * (width - len(radii)))
    return header, rows


def run_radii(args) -> int:
    extra = {'table_version': RADII_TABLE_VERSION}
    if args.table:
        header, rows = radii_table_rows(args.degree)
        write_output(args.format, header, rows, args.output, extra)
        return EXIT_OK

    kwargs = {'start': args.start}
    if args.max_iter is not None:
        kwargs['max_iter'] = args.max_iter
    inner = optimize_concentric_radii(args.degree, **kwargs)
    radii = (1.0,) + inner

    if args.compare:
        tabulated = [r for r in concentric_radii_table(args.degree) if r > 0.0]
        header = ['ring', 'optimized', 'table', 'abs_diff']
        rows = [[i, r, t, abs(r - t)] for i, (r, t) in enumerate(zip(radii, tabulated))]
        worst = max(row[-1] for row in rows)
        logger.info(f"📊 Radii for n={args.degree} differ from the table by at most {worst:.3e}")
        extra['max_abs_diff'] = worst
    else:
        header = ['n'] + [f"R{i}" for i in range(len(radii))]
        rows = [[args.degree] + list(radii)]
    write_output(args.format, header, rows, args.output, extra)
    return EXIT_OK
