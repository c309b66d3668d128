import math

import numpy as np
import pytest

from waldron.models.simplex import (
    Simplex,
    baran_distance,
    great_circle_distance,
    inside_simplex,
    sphere_lift,
)
from waldron.utils.errors import DegenerateSimplexError, DomainError


class TestBarycentric:
    def test_vertex(self, triangle):
        np.testing.assert_allclose(triangle.to_barycentric([0.0, 1.0]), [0, 0, 1], atol=1e-15)

    def test_centroid(self, triangle):
        np.testing.assert_allclose(triangle.to_barycentric([0.0, 0.0]), [1 / 3] * 3, atol=1e-15)

    def test_unit_tetrahedron_barycentre(self):
        unit = Simplex.named('unit3')
        np.testing.assert_allclose(unit.to_barycentric([0.25, 0.25, 0.25]), [0.25] * 4, atol=1e-15)

    def test_round_trip(self, tetrahedron, rng):
        lam = rng.dirichlet(np.ones(4), size=500)
        x = tetrahedron.from_barycentric(lam)
        np.testing.assert_allclose(tetrahedron.to_barycentric(x), lam, atol=1e-13)

    def test_rows_sum_to_one(self, triangle, rng):
        lam = triangle.to_barycentric(rng.normal(size=(100, 2)))
        np.testing.assert_allclose(lam.sum(axis=1), 1.0, atol=1e-14)

    def test_wrong_dimension(self, triangle):
        with pytest.raises(DomainError):
            triangle.to_barycentric([0.0, 0.0, 0.0])


class TestConstruction:
    def test_degenerate(self):
        with pytest.raises(DegenerateSimplexError):
            Simplex([[0, 0], [1, 1], [2, 2]])

    def test_wrong_shape(self):
        with pytest.raises(DomainError):
            Simplex([[0, 0], [1, 0]])

    def test_named(self, triangle, tetrahedron):
        assert triangle.dim == 2 and triangle.is_centred
        assert tetrahedron.dim == 3 and tetrahedron.is_centred
        assert not Simplex.named('unit2').is_centred
        assert triangle.diameter == pytest.approx(math.sqrt(3))
        np.testing.assert_allclose(np.linalg.norm(tetrahedron.vertices, axis=1), 1.0)

    def test_unknown_name(self):
        with pytest.raises(DomainError):
            Simplex.named('square')

    def test_vertices_are_read_only(self, triangle):
        with pytest.raises(ValueError):
            triangle.vertices[0, 0] = 5.0

    def test_from_csv(self, tmp_path):
        path = tmp_path / 'tri.csv'
        path.write_text('# right triangle\n0,0\n2,0\n0,2\n')
        simplex = Simplex.from_spec(str(path))
        assert simplex.name == 'tri'
        np.testing.assert_allclose(simplex.to_barycentric([0.5, 0.5]), [0.5, 0.25, 0.25])


class TestDistances:
    def test_sphere_lift(self):
        np.testing.assert_allclose(sphere_lift([1, 0, 0]), [1, 0, 0])
        np.testing.assert_allclose(sphere_lift([1 / 3] * 3), [1 / math.sqrt(3)] * 3)
        np.testing.assert_allclose(sphere_lift([0.5, 0.5, 0]), [math.sqrt(2) / 2] * 2 + [0])

    def test_sphere_lift_rejects_outside(self):
        with pytest.raises(DomainError):
            sphere_lift([1.2, -0.2, 0.0])

    def test_baran_vertices(self):
        assert baran_distance([1, 0, 0], [0, 1, 0]) == pytest.approx(math.pi / 2)

    def test_baran_identity(self, rng):
        a = rng.dirichlet(np.ones(3))
        assert baran_distance(a, a) == pytest.approx(0.0, abs=1e-7)

    def test_baran_barycentre_to_vertex(self):
        assert baran_distance([1 / 3] * 3, [1, 0, 0]) == pytest.approx(math.acos(1 / math.sqrt(3)), abs=1e-12)
        assert baran_distance([1 / 3] * 3, [1, 0, 0]) == pytest.approx(0.95532, abs=1e-5)

    def test_baran_is_great_circle_of_lift(self, rng):
        a = rng.dirichlet(np.ones(4), size=50)
        b = rng.dirichlet(np.ones(4), size=50)
        np.testing.assert_allclose(baran_distance(a, b),
                                   great_circle_distance(sphere_lift(a), sphere_lift(b)), atol=1e-12)

    def test_inside_simplex(self):
        assert inside_simplex([0.2, 0.3, 0.5])
        assert not inside_simplex([1.2, -0.2, 0.0])
        assert not inside_simplex([0.2, 0.2, 0.2])
