"""
Benchmark subcommands: lebesgue, spacing, repro-tables
"""

import logging
from pathlib import Path

from waldron.cli.common import (
    EXIT_COMPUTATION,
    EXIT_OK,
    add_output_arguments,
    check_output_arguments,
    parse_vector,
    print_summary,
    require,
)
from waldron.models.weights import WeightKind, weight_from_spec
from waldron.services.analysis import (
    compare_with_golden,
    lebesgue_table,
    load_golden,
    spacing_D,
    spacing_extrema,
    spherical_spacing,
)
from waldron.services.interp import InterpolationScheme
from waldron.services.points import spherical_full_sphere
from waldron.utils.constants import GOLDEN_FILES, GOLDEN_RTOL
from waldron.utils.io import aligned_table, write_output, write_records_csv
from waldron.utils.validators import (
    parse_degrees,
    validate_degrees,
    validate_family,
    validate_grid,
    validate_point,
    validate_scheme,
    validate_weight,
)

logger = logging.getLogger(__name__)

TABLE_FAMILIES = {
    2: ['waldron:cosine', 'concentric', 'simplex'],
    3: ['waldron3d:cosine', 'simplex'],
}
TABLE_DEGREES = {2: '1..16', 3: '1..12'}


def register(subparsers):
    leb = subparsers.add_parser('lebesgue', help='Lebesgue constants of node families',
                                description='Maximum of the Lebesgue function over the barycentric '
                                            'lattice, one row per degree and one column per family')
    leb.add_argument('--families', default='simplex,waldron:cosine',
                     help='Comma-separated families, e.g. simplex,waldron:cosine,concentric')
    leb.add_argument('--degrees', required=True, help='n, a..b or a,b,c')
    leb.add_argument('--dim', type=int, default=2, choices=[2, 3], help='Dimension d')
    leb.add_argument('--grid', default='auto', help="Lattice subdivisions M, or 'auto' for adaptive doubling")
    leb.add_argument('--scheme', default='polynomial', help='Cardinal functions to use')
    add_output_arguments(leb)
    leb.set_defaults(handler=run_lebesgue, validate=validate_lebesgue, parser=leb)

    spacing = subparsers.add_parser('spacing', help='Spacing of spherical Waldron points',
                                    description='Extremes of D^2 / (pi/2)^2, neighbour spacing ratios '
                                                'and full-sphere point counts')
    spacing.add_argument('--weight', default='cosine', help='Weight (the closed form needs cosine)')
    spacing.add_argument('--grid', type=int, default=2000, help='Lattice subdivisions for the D^2 extremes')
    spacing.add_argument('--degrees', default='10,20,40', help='Degrees for neighbour spacing')
    spacing.add_argument('--theta', action='append', default=None,
                         help='Report closed-form and finite-difference D^2 at theta (repeatable)')
    add_output_arguments(spacing, default_format='json')
    spacing.set_defaults(handler=run_spacing, validate=validate_spacing, parser=spacing)

    repro = subparsers.add_parser('repro-tables', help='Reproduce both Lebesgue tables',
                                  description='Recompute the 2D and 3D Lebesgue tables and diff '
                                              'them against the shipped golden files')
    repro.add_argument('--dim', default='all', choices=['2', '3', 'all'], help='Which table')
    repro.add_argument('--degrees', default=None, help='Restrict the degrees (default: whole table)')
    repro.add_argument('--grid', default='auto', help="Lattice subdivisions M, or 'auto'")
    repro.add_argument('--output-dir', default='results', help='Directory for tables and diffs')
    repro.set_defaults(handler=run_repro, validate=validate_repro, parser=repro)


def validate_lebesgue(args):
    check_output_arguments(args)
    require(args, '--degrees', validate_degrees(args.degrees))
    require(args, '--grid', validate_grid(args.grid))
    require(args, '--scheme', validate_scheme(args.scheme))
    args.families = [f.strip() for f in args.families.split(',') if f.strip()]
    if not args.families:
        args.parser.error("--families: no family given")
    for family in args.families:
        require(args, '--families', validate_family(family, args.dim))
        if family.startswith('spherical'):
            args.parser.error("--families: spherical points have no Lebesgue constant here")
        weight_spec = family.partition(':')[2]
        if weight_spec:
            require(args, '--families', validate_weight(weight_spec))


def _grid_value(text: str):
    return text if text == 'auto' else int(text)


def run_lebesgue(args) -> int:
    table = lebesgue_table(args.families, parse_degrees(args.degrees), args.dim,
                           grid=_grid_value(args.grid),
                           scheme=InterpolationScheme(args.scheme),
                           threads=args.threads,
                           max_doublings=args.config.MAX_GRID_DOUBLINGS)
    rows = [[row.get(c) for c in table.columns] for row in table.rows]
    print_summary(args, f"📊 Lebesgue constants (d={args.dim}, {args.scheme})\n"
                        f"{aligned_table(table.columns, rows)}")
    extra = {'dim': args.dim, 'scheme': args.scheme,
             'reports': [report.as_row() for report in table.reports]}
    write_output(args.format, table.columns, rows, args.output, extra)
    return EXIT_OK


def validate_spacing(args):
    check_output_arguments(args)
    require(args, '--weight', validate_weight(args.weight))
    require(args, '--degrees', validate_degrees(args.degrees, maximum=1000))
    if args.grid < 100:
        args.parser.error(f"--grid: must be >= 100, got {args.grid}")
    for text in args.theta or []:
        require(args, '--theta', validate_point(text, 3))


def run_spacing(args) -> int:
    weight = weight_from_spec(args.weight)
    rows = []

    for text in args.theta or []:
        closed, numeric = spacing_D(parse_vector(text), weight)
        rows.append(['d2_closed_form', text, closed])
        rows.append(['d2_finite_difference', text, numeric])

    if weight.kind is WeightKind.COSINE:
        extrema = spacing_extrema(args.grid, weight)
        rows.append(['d2_ratio_min', '', extrema.d2_ratio_min])
        rows.append(['d2_ratio_max', '', extrema.d2_ratio_max])
        rows.append(['d2_argmax_theta', '', ','.join(f"{v:.17g}" for v in extrema.argmax_theta)])
    else:
        logger.warning(f"⚠️ Closed-form D^2 extremes need the cosine weight, skipped for {weight.name}")

    for n in parse_degrees(args.degrees):
        if n < 2:
            continue
        report = spherical_spacing(n, weight)
        rows.append(['neighbor_ratio_min', str(n), report.ratio_min])
        rows.append(['neighbor_ratio_max', str(n), report.ratio_max])
        rows.append(['full_sphere_points', str(n), len(spherical_full_sphere(n, weight))])

    write_output(args.format, ['quantity', 'at', 'value'], rows, args.output, {'weight': weight.name})
    return EXIT_OK


def validate_repro(args):
    require(args, '--grid', validate_grid(args.grid))
    if args.degrees is not None:
        require(args, '--degrees', validate_degrees(args.degrees))


def run_repro(args) -> int:
    dims = [2, 3] if args.dim == 'all' else [int(args.dim)]
    output_dir = Path(args.output_dir)
    failures = 0

    for d in dims:
        degrees = parse_degrees(args.degrees or TABLE_DEGREES[d])
        logger.info(f"🚀 Reproducing the {d}D Lebesgue table for n = {degrees[0]}..{degrees[-1]}")
        table = lebesgue_table(TABLE_FAMILIES[d], degrees, d,
                               grid=_grid_value(args.grid),
                               threads=args.threads,
                               max_doublings=args.config.MAX_GRID_DOUBLINGS)
        rows = [[row.get(c) for c in table.columns] for row in table.rows]
        write_output('csv', table.columns, rows, output_dir / f"lebesgue_{d}d.csv")

        diffs = compare_with_golden(table, load_golden(GOLDEN_FILES[d]), GOLDEN_RTOL[d])
        write_records_csv(diffs, output_dir / f"lebesgue_{d}d_diff.csv",
                          columns=['n', 'family', 'computed', 'expected', 'rel_error', 'ok'])
        bad = [diff for diff in diffs if not diff['ok']]
        for diff in bad:
            logger.error(f"❌ d={d} n={diff['n']} {diff['family']}: {diff['computed']:.4f} vs "
                         f"{diff['expected']:.2f} ({diff['rel_error']:.2%})")
        worst = max((diff['rel_error'] for diff in diffs), default=0.0)
        logger.info(f"✅ {d}D table: {len(diffs) - len(bad)}/{len(diffs)} cells within "
                    f"{GOLDEN_RTOL[d]:.0%} (worst {worst:.2%})")
        failures += len(bad)

    return EXIT_COMPUTATION if failures else EXIT_OK
