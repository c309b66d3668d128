import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from waldron.cli.main import run
from waldron.utils.constants import CONCENTRIC_RADII

ROOT = Path(__file__).parent.parent


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.fixture
def cli(capsys):
    """Run the CLI in-process and return (exit code, stdout)"""
    def invoke(*argv):
        code = run(['--log-level', 'WARNING', *argv])
        return code, capsys.readouterr().out
    return invoke


class TestGen:
    def test_waldron_degree_eight(self, cli):
        code, out = cli('gen', '--family', 'waldron', '--weight', 'cosine', '--degree', '8')
        assert code == 0
        rows = read_csv(out)
        assert len(rows) == 46
        assert rows[0] == ['alpha_1', 'alpha_2', 'alpha_3', 'x_1', 'x_2', 'lambda_1', 'lambda_2', 'lambda_3',
                           'w_1', 'w_2', 'w_3']

    def test_family_with_weight_suffix(self, cli):
        code, out = cli('gen', '--family', 'waldron:quad', '--degree', '3', '--format', 'json')
        assert code == 0
        payload = json.loads(out)
        assert payload['family'] == 'waldron:quad'
        assert len(payload['rows']) == 10

    def test_concentric_columns(self, cli):
        code, out = cli('gen', '--family', 'concentric', '--degree', '4')
        rows = read_csv(out)
        assert code == 0
        assert rows[0][:2] == ['ring', 'slot']
        assert len(rows) == 16

    def test_waldron3d_dimension_inferred(self, cli):
        code, out = cli('gen', '--family', 'waldron3d', '--degree', '4')
        assert code == 0
        assert len(read_csv(out)) == 36

    def test_spherical_octant_columns(self, cli):
        code, out = cli('gen', '--family', 'spherical', '--degree', '2')
        rows = read_csv(out)
        assert code == 0
        assert rows[0] == ['alpha_1', 'alpha_2', 'alpha_3', 'x', 'y', 'z']
        assert len(rows) == 7

    def test_three_dimensional_columns(self, cli):
        code, out = cli('gen', '--family', 'simplex', '--dim', '3', '--degree', '1')
        assert code == 0
        assert read_csv(out)[0] == ['alpha_1', 'alpha_2', 'alpha_3', 'alpha_4', 'x_1', 'x_2', 'x_3',
                                    'lambda_1', 'lambda_2', 'lambda_3', 'lambda_4']

    def test_full_sphere(self, cli):
        code, out = cli('gen', '--family', 'spherical', '--degree', '1', '--full-sphere')
        rows = read_csv(out)
        assert code == 0
        assert rows[0] == ['x', 'y', 'z']
        assert len(rows) == 7

    def test_output_file_and_preview(self, cli, tmp_path):
        target = tmp_path / 'nodes.csv'
        preview = tmp_path / 'nodes.png'
        code, out = cli('gen', '--family', 'simplex', '--degree', '5', '-o', str(target), '--preview', str(preview))
        assert code == 0
        assert out == ''
        assert len(target.read_text().splitlines()) == 22
        assert preview.read_bytes()[:8] == b'\x89PNG\r\n\x1a\n'


class TestUsageErrors:
    @pytest.mark.parametrize('argv', [
        ['gen', '--family', 'fekete', '--degree', '3'],
        ['gen', '--family', 'waldron', '--degree', '-1'],
        ['gen', '--family', 'concentric', '--degree', '3', '--dim', '3'],
        ['gen', '--family', 'waldron', '--weight', 'sine', '--degree', '3'],
        ['gen', '--family', 'simplex', '--degree', '3', '--full-sphere'],
        ['lebesgue', '--degrees', '1..x'],
        ['lebesgue', '--degrees', '3', '--grid', 'fine'],
        ['interp', '--family', 'waldron', '--degree', '3', '--scheme', 'spline'],
        ['interp', '--family', 'waldron', '--degree', '3', '--at', '0.1'],
        ['radii', '--degree', '3'],
        ['spacing', '--grid', '10'],
        ['chart', '--theta', '0.5,0.5'],
        ['--threads', '0', 'gen', '--family', 'simplex', '--degree', '2'],
        ['interp', '--family', 'waldron', '--degree', '3', '--fn', 'cosh'],
        ['interp', '--family', 'waldron', '--degree', '3', '--grid', '0'],
        ['interp', '--family', 'waldron', '--degree', '3', '--grid', '4', '--at', '0,0'],
        ['radii'],
        ['radii', '--table', '--compare'],
        ['radii', '--table', '--degree', '13'],
        ['radii', '--degree', '13', '--compare'],
        ['chart', '--theta', '0.5,0.5,0', '--input', 'points.csv'],
        ['frobnicate'],
    ])
    def test_exit_two(self, cli, argv):
        code, _ = cli(*argv)
        assert code == 2


class TestComputationErrors:
    def test_radii_iteration_limit(self, cli):
        code, _ = cli('radii', '--degree', '4', '--max-iter', '1')
        assert code == 1

    def test_chart_outside_image(self, cli):
        code, _ = cli('chart', '--simplex', 'centred3d', '--point', '0,0,-0.3333333333333333')
        assert code == 1

    def test_malformed_vertex_file(self, cli, tmp_path):
        path = tmp_path / 'bad.csv'
        path.write_text('0,0\n1,zero\n0,1\n')
        code, _ = cli('gen', '--family', 'simplex', '--degree', '2', '--simplex', str(path))
        assert code == 1

    def test_malformed_density_file(self, cli, tmp_path):
        path = tmp_path / 'density.csv'
        path.write_text('t,F\n0,1\n0.25,one\n0.5,1\n')
        code, _ = cli('gen', '--family', 'waldron', '--degree', '2', '--weight', f"density:file={path}")
        assert code == 1

    def test_traceback_only_in_development(self, capsys, tmp_path):
        path = tmp_path / 'flat.csv'
        path.write_text('0,0\n1,1\n2,2\n')
        argv = ['gen', '--family', 'simplex', '--degree', '2', '--simplex', str(path)]
        assert run(['--env', 'development', '--log-level', 'ERROR', *argv]) == 1
        assert 'Traceback' in capsys.readouterr().err
        assert run(['--env', 'production', '--log-level', 'ERROR', *argv]) == 1
        err = capsys.readouterr().err
        assert 'DegenerateSimplexError' in err and 'Traceback' not in err

    def test_collinear_vertices(self, cli, tmp_path):
        path = tmp_path / 'flat.csv'
        path.write_text('0,0\n1,1\n2,2\n')
        code, _ = cli('gen', '--family', 'simplex', '--degree', '2', '--simplex', str(path))
        assert code == 1


class TestLebesgue:
    def test_simplex_small_degrees(self, cli):
        code, out = cli('lebesgue', '--families', 'simplex', '--degrees', '1..3', '--grid', '400')
        assert code == 0
        rows = read_csv(out)
        assert rows[0] == ['n', 'N', 'simplex']
        values = [float(r[2]) for r in rows[1:]]
        assert values == pytest.approx([1.0, 1.67, 2.27], rel=0.02)

    def test_deterministic_across_threads(self, cli):
        argv = ['lebesgue', '--families', 'simplex,waldron', '--degrees', '2,4', '--grid', '60']
        _, first = cli('--threads', '1', *argv)
        _, second = cli('--threads', '1', *argv)
        _, pooled = cli('--threads', '4', *argv)
        assert first == second == pooled

    def test_json_has_reports_without_timing(self, cli):
        code, out = cli('lebesgue', '--families', 'waldron', '--degrees', '2', '--grid', '40', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        assert payload['columns'] == ['n', 'N', 'waldron']
        assert payload['reports'][0]['grid'] == 40
        assert 'elapsed' not in payload['reports'][0]

    def test_summary_table_printed_at_production_level(self, capsys, tmp_path):
        target = tmp_path / 'leb.csv'
        code = run(['--env', 'production', 'lebesgue', '--families', 'simplex', '--degrees', '1..2',
                    '--grid', '60', '-o', str(target)])
        out = capsys.readouterr().out
        assert code == 0
        assert 'Lebesgue constants (d=2, polynomial)' in out
        assert 'n  N  simplex' in out
        assert read_csv(target.read_text())[0] == ['n', 'N', 'simplex']

    def test_summary_table_kept_off_csv_stdout(self, capsys):
        code = run(['--env', 'production', 'lebesgue', '--families', 'simplex', '--degrees', '1',
                    '--grid', '40'])
        captured = capsys.readouterr()
        assert code == 0
        assert read_csv(captured.out)[0] == ['n', 'N', 'simplex']
        assert 'Lebesgue constants' in captured.err

    def test_spherical_rejected(self, cli):
        code, _ = cli('lebesgue', '--families', 'spherical', '--degrees', '2')
        assert code == 2


class TestInterp:
    def test_rational_reproduces_one(self, cli):
        code, out = cli('interp', '--family', 'waldron', '--degree', '4', '--scheme', 'rational',
                        '--function', 'one', '--random', '20', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        assert len(payload['rows']) == 20
        assert payload['max_error'] < 1e-12

    def test_at_points(self, cli):
        code, out = cli('interp', '--family', 'simplex', '--degree', '6', '--at', '0,0', '--at', '0.1,-0.2')
        rows = read_csv(out)
        assert code == 0
        assert rows[0] == ['x', 'y', 'value', 'exact', 'error', 'scheme']
        assert len(rows) == 3

    def test_rational_scheme_recorded_in_csv(self, cli):
        code, out = cli('interp', '--family', 'waldron', '--degree', '4', '--scheme', 'rational', '--random', '3')
        rows = read_csv(out)
        assert code == 0
        assert rows[0][-1] == 'scheme'
        assert {row[-1] for row in rows[1:]} == {'rational'}

    def test_grid_samples(self, cli):
        code, out = cli('interp', '--family', 'waldron', '--degree', '5', '--grid', '8')
        rows = read_csv(out)
        assert code == 0
        assert rows[0] == ['x', 'y', 'value', 'scheme']
        assert len(rows) == 1 + 45

    def test_node_values_from_csv(self, cli, tmp_path):
        _, out = cli('gen', '--family', 'waldron', '--degree', '3')
        nodes = read_csv(out)
        x_1, x_2 = nodes[0].index('x_1'), nodes[0].index('x_2')
        lines = ['x_1,x_2,value']
        for row in nodes[1:]:
            x, y = float(row[x_1]), float(row[x_2])
            lines.append(f"{row[x_1]},{row[x_2]},{2 * x - y + 0.5!r}")
        values = tmp_path / 'values.csv'
        values.write_text('\n'.join(lines) + '\n')

        code, out = cli('interp', '--family', 'waldron', '--degree', '3', '--fn', str(values),
                        '--at', '0.1,-0.2')
        rows = read_csv(out)
        assert code == 0
        assert rows[0] == ['x', 'y', 'value', 'scheme']
        assert float(rows[1][2]) == pytest.approx(0.9, abs=1e-12)

    def test_node_values_must_match_nodes(self, cli, tmp_path):
        values = tmp_path / 'values.csv'
        values.write_text('x_1,x_2,value\n' + '0.5,0.5,1\n' * 10)
        code, _ = cli('interp', '--family', 'waldron', '--degree', '3', '--fn', str(values))
        assert code == 1

    def test_node_values_need_value_column(self, cli, tmp_path):
        values = tmp_path / 'values.csv'
        values.write_text('f\n' + '1\n' * 10)
        code, _ = cli('interp', '--family', 'simplex', '--degree', '3', '--fn', str(values))
        assert code == 1

    def test_seeded_random_points(self, cli):
        argv = ['interp', '--family', 'concentric', '--degree', '5', '--random', '5']
        assert cli('--seed', '7', *argv)[1] == cli('--seed', '7', *argv)[1]
        assert cli('--seed', '7', *argv)[1] != cli('--seed', '8', *argv)[1]


class TestChart:
    def test_forward(self, cli):
        code, out = cli('chart', '--theta', '0.5,0.5,0')
        rows = read_csv(out)
        assert code == 0
        assert [float(v) for v in rows[1][3:6]] == pytest.approx([0.5, 0.5, 0.0], abs=1e-15)

    def test_theta_list_from_csv(self, cli, tmp_path):
        path = tmp_path / 'theta.csv'
        path.write_text('theta_1,theta_2,theta_3\n0.5,0.5,0\n1,0,0\n')
        code, out = cli('chart', '--input', str(path))
        rows = read_csv(out)
        assert code == 0
        assert rows[0][3:6] == ['lambda_1', 'lambda_2', 'lambda_3']
        assert [float(v) for v in rows[2][3:6]] == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)

    def test_lambda_list_from_csv(self, cli, tmp_path):
        path = tmp_path / 'lambda.csv'
        path.write_text('lambda_1,lambda_2,lambda_3\n0.3333333333333333,0.3333333333333333,0.3333333333333334\n'
                        '0.5,0.5,0\n')
        code, out = cli('chart', '--input', str(path), '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        first, second = (dict(zip(payload['columns'], row)) for row in payload['rows'])
        assert first['theta_1'] == pytest.approx(1 / 3, abs=1e-12)
        assert [second['theta_1'], second['theta_2'], second['theta_3']] == pytest.approx([0.5, 0.5, 0.0], abs=1e-12)

    def test_point_list_from_csv(self, cli, tmp_path):
        path = tmp_path / 'points.csv'
        path.write_text('x_1,x_2\n0,0\n0.1,-0.2\n')
        code, out = cli('chart', '--input', str(path))
        rows = read_csv(out)
        assert code == 0
        assert rows[0][-1] == 'shift'
        assert len(rows) == 3

    def test_csv_without_known_columns(self, cli, tmp_path):
        path = tmp_path / 'points.csv'
        path.write_text('u,v\n0,0\n')
        code, _ = cli('chart', '--input', str(path))
        assert code == 1

    def test_inverse_of_centroid(self, cli):
        code, out = cli('chart', '--point', '0,0', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        row = dict(zip(payload['columns'], payload['rows'][0]))
        assert row['theta_1'] == pytest.approx(1 / 3, abs=1e-12)
        assert row['shift'] == pytest.approx(-1 / 12, abs=1e-12)


class TestRadiiAndSpacing:
    def test_radii_degree_four(self, cli):
        code, out = cli('radii', '--degree', '4', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        assert payload['columns'] == ['n', 'R0', 'R1']
        assert payload['rows'][0][2] == pytest.approx((1 + 3 * 5 ** 0.5) / 22, abs=1e-6)
        assert payload['table_version'] == '1'

    def test_spacing(self, cli):
        code, out = cli('spacing', '--grid', '400', '--degrees', '10', '--theta', '0.4,0.4,0.2',
                        '--format', 'csv')
        rows = {(r[0], r[1]): r[2] for r in read_csv(out)[1:]}
        assert code == 0
        assert float(rows[('d2_ratio_max', '')]) == pytest.approx(2.1547, abs=2e-3)
        assert float(rows[('d2_closed_form', '0.4,0.4,0.2')]) == pytest.approx(
            float(rows[('d2_finite_difference', '0.4,0.4,0.2')]), rel=1e-6)
        assert rows[('full_sphere_points', '10')] == '402'

    @pytest.mark.parametrize('n', [7, 8])
    def test_radii_reach_table(self, cli, n):
        code, out = cli('radii', '--degree', str(n), '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        expected = [r for r in CONCENTRIC_RADII[n] if r > 0.0]
        assert payload['rows'][0][1:] == pytest.approx(expected, abs=1e-6)

    def test_radii_table(self, cli):
        code, out = cli('radii', '--table')
        rows = read_csv(out)
        assert code == 0
        assert rows[0] == ['n', 'points', 'R0', 'R1', 'R2', 'R3', 'R4']
        assert len(rows) == 13
        assert rows[6][:3] == ['6', '28', '1']
        assert float(rows[6][3]) == CONCENTRIC_RADII[6][1]
        assert rows[1][3:] == ['', '', '', '']

    def test_radii_table_single_degree(self, cli):
        code, out = cli('radii', '--table', '--degree', '9', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        assert payload['columns'] == ['n', 'points', 'R0', 'R1', 'R2', 'R3']
        assert payload['rows'] == [[9, 55, 1.0, 0.8314018389721662, 0.4713481792856927, 0.0]]
        assert payload['table_version'] == '1'

    def test_radii_compare(self, cli):
        code, out = cli('radii', '--degree', '5', '--compare', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        assert payload['columns'] == ['ring', 'optimized', 'table', 'abs_diff']
        assert payload['rows'][1][2] == 0.5467133890977183
        assert payload['max_abs_diff'] < 1e-6

    def test_spacing_defaults_to_json(self, cli):
        code, out = cli('spacing', '--grid', '200', '--degrees', '4')
        payload = json.loads(out)
        assert code == 0
        assert payload['columns'] == ['quantity', 'at', 'value']
        assert payload['weight'] == 'cosine'


class TestReproTables:
    def test_small_run(self, cli, tmp_path):
        code, _ = cli('repro-tables', '--dim', '2', '--degrees', '1..2', '--grid', '100',
                      '--output-dir', str(tmp_path))
        assert code == 0
        table = read_csv((tmp_path / 'lebesgue_2d.csv').read_text())
        assert table[0] == ['n', 'N', 'waldron', 'concentric', 'simplex']
        diffs = read_csv((tmp_path / 'lebesgue_2d_diff.csv').read_text())
        assert len(diffs) == 1 + 2 * 3
        assert all(row[-1] == 'true' for row in diffs[1:])


def test_module_help():
    result = subprocess.run([sys.executable, '-m', 'waldron', '--help'], cwd=ROOT,
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert 'repro-tables' in result.stdout
