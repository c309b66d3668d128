import math

import numpy as np
import pytest

from waldron.models.weights import (
    ConvexWeight,
    CosineWeight,
    Density,
    DensityWeight,
    IdentityWeight,
    QuadraticWeight,
    weight_from_spec,
)
from waldron.utils.errors import DomainError


def constant_density(t):
    return np.ones_like(np.asarray(t, dtype=float))


def cosine_density(t):
    return 0.5 * np.pi * np.sin(np.pi * np.asarray(t, dtype=float))


class TestBuiltinValues:
    def test_cosine_values(self, cosine):
        assert cosine.eval(0.5) == pytest.approx(0.5, abs=1e-15)
        assert cosine.eval(1 / 3) == pytest.approx(0.25, abs=1e-15)
        assert cosine(0.0) == 0.0
        assert cosine(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_quadratic_value(self):
        assert QuadraticWeight().eval(0.25) == pytest.approx(1 / 8, abs=1e-15)

    def test_scalar_in_scalar_out(self, cosine):
        assert isinstance(cosine.eval(0.3), float)
        assert cosine.eval(np.array([0.3, 0.4])).shape == (2,)

    def test_inverse_values(self, cosine):
        assert cosine.eval_inverse(0.25) == pytest.approx(1 / 3, abs=1e-14)
        assert IdentityWeight().eval_inverse(0.81) == pytest.approx(0.81, abs=1e-15)
        assert QuadraticWeight().eval_inverse(7 / 8) == pytest.approx(0.75, abs=1e-14)

    def test_derivative_values(self, cosine):
        assert cosine.eval_derivative(0.5) == pytest.approx(math.pi / 2, abs=1e-14)
        assert IdentityWeight().eval_derivative(0.3) == 1.0
        h = 1e-6
        fd = (cosine.eval(0.2 + h) - cosine.eval(0.2 - h)) / (2 * h)
        assert cosine.eval_derivative(0.2) == pytest.approx(fd, rel=1e-8)

    def test_outside_unit_interval_raises(self, cosine):
        with pytest.raises(DomainError):
            cosine.eval(1.5)
        with pytest.raises(DomainError):
            cosine.eval_inverse(-0.1)


class TestPredicates:
    def test_superadditive_examples(self, cosine):
        assert cosine.check_superadditive([0.2, 0.3, 0.5])
        assert IdentityWeight().check_superadditive([1 / 3, 1 / 3, 1 / 3])
        assert QuadraticWeight().check_superadditive([0.1, 0.2, 0.3])

    def test_superadditive_rejects_overfull_theta(self, cosine):
        with pytest.raises(DomainError):
            cosine.check_superadditive([0.7, 0.7])

    def test_allowable_sum(self, cosine):
        assert cosine.check_allowable_sum([0.5, 0.3, 0.2])
        with pytest.raises(DomainError):
            cosine.check_allowable_sum([0.5, 0.3])

    def test_diagonal_bounds(self, builtin_weight):
        assert builtin_weight.check_diagonal_bounds(np.linspace(0, 1, 101))


class TestPropertySuites:
    """Randomized checks, 10^4 cases per built-in weight"""

    def test_complementary(self, builtin_weight, rng):
        x = rng.uniform(0, 1, 10_000)
        assert builtin_weight.check_complementary(x)

    def test_monotone(self, builtin_weight, rng):
        x = np.sort(rng.uniform(0, 1, 10_000))
        assert np.all(np.diff(builtin_weight.eval(x)) >= 0)

    def test_superadditive(self, builtin_weight, rng):
        theta = rng.dirichlet(np.ones(4), size=10_000)[:, :3]
        assert all(builtin_weight.check_superadditive(t) for t in theta)

    def test_below_diagonal_on_lower_half(self, builtin_weight, rng):
        x = rng.uniform(0, 0.5, 10_000)
        assert np.all(builtin_weight.eval(x) <= x + 1e-15)

    def test_inverse_round_trip(self, builtin_weight, rng):
        y = rng.uniform(0, 1, 10_000)
        np.testing.assert_allclose(builtin_weight.eval(builtin_weight.eval_inverse(y)), y, atol=1e-12)
        x = rng.uniform(0, 1, 10_000)
        np.testing.assert_allclose(builtin_weight.eval_inverse(builtin_weight.eval(x)), x, atol=1e-10)


class TestDensityWeight:
    def test_constant_density_recovers_identity(self):
        w = DensityWeight(Density(constant_density), nodes=257)
        assert w.eval(0.37) == pytest.approx(0.37, abs=1e-10)
        assert w.eval(0.81) == pytest.approx(0.81, abs=1e-10)

    def test_sine_density_recovers_cosine(self, cosine):
        w = DensityWeight(Density(cosine_density), nodes=257)
        x = np.linspace(0, 1, 501)
        np.testing.assert_allclose(w.eval(x), cosine.eval(x), atol=1e-8)
        np.testing.assert_allclose(w.eval_derivative(x), cosine.eval_derivative(x), atol=1e-12)

    def test_complementary_and_endpoints(self):
        w = DensityWeight(Density(lambda t: 4.0 * np.asarray(t, dtype=float)), nodes=257)
        assert w.eval(0.0) == 0.0
        assert w.eval(1.0) == pytest.approx(1.0, abs=1e-15)
        assert w.check_complementary(np.linspace(0, 1, 101))
        np.testing.assert_allclose(w.eval(np.linspace(0, 1, 101)),
                                   QuadraticWeight().eval(np.linspace(0, 1, 101)), atol=1e-10)

    def test_inverse_by_bisection(self):
        w = DensityWeight(Density(cosine_density), nodes=257)
        assert w.eval_inverse(0.25) == pytest.approx(1 / 3, abs=1e-7)

    def test_unnormalized_density_rejected(self):
        with pytest.raises(DomainError, match='normalize=True'):
            Density(lambda t: 2.0 * constant_density(t))

    def test_unnormalized_density_rescaled(self):
        density = Density(lambda t: 2.0 * constant_density(t), normalize=True)
        assert density(0.2) == pytest.approx(1.0)
        assert DensityWeight(density, nodes=129).eval(0.5) == pytest.approx(0.5, abs=1e-15)

    def test_decreasing_density_rejected(self):
        with pytest.raises(DomainError, match='non-decreasing'):
            Density(lambda t: 1.5 - 2.0 * np.asarray(t, dtype=float))

    def test_from_csv(self, tmp_path):
        path = tmp_path / 'flat.csv'
        path.write_text('t,F\n0,1\n0.25,1\n0.5,1\n')
        w = DensityWeight(Density.from_csv(path), nodes=129)
        assert w.eval(0.25) == pytest.approx(0.25, abs=1e-10)
        assert w.name == 'density:flat.csv'

    def test_from_csv_must_cover_half_interval(self, tmp_path):
        path = tmp_path / 'short.csv'
        path.write_text('0,1\n0.3,1\n')
        with pytest.raises(DomainError):
            Density.from_csv(path)


class TestConvexWeight:
    def test_endpoints_of_the_segment(self, cosine):
        quad = QuadraticWeight()
        x = np.linspace(0, 1, 11)
        np.testing.assert_allclose(ConvexWeight(0.0, cosine, quad).eval(x), cosine.eval(x))
        np.testing.assert_allclose(ConvexWeight(1.0, cosine, quad).eval(x), quad.eval(x))

    def test_inverse_round_trip(self, cosine, rng):
        w = ConvexWeight(0.3, cosine, QuadraticWeight())
        y = rng.uniform(0, 1, 1000)
        np.testing.assert_allclose(w.eval(w.eval_inverse(y)), y, atol=1e-12)

    @pytest.mark.parametrize('t', [0.0, 0.25, 0.5, 0.9])
    @pytest.mark.parametrize('pair', [('cosine', 'quad'), ('identity', 'cosine'), ('quad', 'identity')])
    def test_combinations_are_allowable(self, t, pair, rng):
        w = ConvexWeight(t, weight_from_spec(pair[0]), weight_from_spec(pair[1]))
        x = rng.uniform(0, 1, 10_000)
        assert w.check_complementary(x)
        assert w.check_diagonal_bounds(x)
        assert np.all(np.diff(w.eval(np.sort(x))) >= 0)
        theta = rng.dirichlet(np.ones(3), size=2000)
        assert all(w.check_allowable_sum(row) for row in theta)
        assert all(w.check_superadditive(row[:2]) for row in theta)

    def test_parameter_range(self, cosine):
        with pytest.raises(DomainError):
            ConvexWeight(1.2, cosine, cosine)


class TestWeightFromSpec:
    @pytest.mark.parametrize('spec,cls', [
        ('identity', IdentityWeight),
        ('cosine', CosineWeight),
        ('quad', QuadraticWeight),
    ])
    def test_builtin(self, spec, cls):
        assert isinstance(weight_from_spec(spec), cls)

    def test_convex(self):
        w = weight_from_spec('convex:t=0.5:cosine:quad')
        assert isinstance(w, ConvexWeight)
        assert w.name == 'convex:t=0.5:cosine:quad'

    def test_density_file(self, tmp_path):
        path = tmp_path / 'flat.csv'
        path.write_text('0,1\n0.5,1\n')
        assert isinstance(weight_from_spec(f'density:file={path}'), DensityWeight)

    @pytest.mark.parametrize('spec', ['sine', 'convex:0.5:cosine:quad', 'density:nofile', 'density:file=/missing.csv'])
    def test_rejects_malformed(self, spec):
        with pytest.raises(DomainError):
            weight_from_spec(spec)
