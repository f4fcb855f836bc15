"""Unit tests for the Volergo Spatial package target coefficients."""

import os
import warnings

import numpy as np
from pyfakefs.fake_filesystem_unittest import TestCase
from volergo.core import Log, QuadratureMassWarning
from volergo.spatial import (
    CoefficientVector,
    GaussianMixture,
    GridDensity,
    SearchSpace,
    UnderResolvedQuadrature,
    build_basis,
    reconstruct,
    target_coefficients,
    write_basis_table,
    write_grid_csv,
)


class TestTargetCoefficients(TestCase):
    def setUp(self):
        self.space = SearchSpace((2.0, 1.0))
        self.basis = build_basis(self.space, 4)

    def test_uniform_target(self):
        """Test a uniform density only excites the constant mode"""
        uniform = GridDensity(self.space, np.ones((16, 16)))
        phi = target_coefficients(self.basis, uniform, 32)
        self.assertAlmostEqual(phi.values[0], 1.0 / np.sqrt(2.0), places=12)
        np.testing.assert_allclose(phi.values[1:], 0.0, atol=1e-12)

    def test_constant_mode_of_any_target(self):
        """Test the constant coefficient is fixed by normalization"""
        covariances = [np.eye(2) * 0.02, np.eye(2) * 0.05]
        mixture = GaussianMixture(self.space, [0.7, 0.3], [[0.5, 0.5], [1.5, 0.2]], covariances)
        phi = target_coefficients(self.basis, mixture, 64)
        self.assertAlmostEqual(phi.values[0], 1.0 / self.basis.normalizers[0], places=12)
        self.assertEqual(len(phi), len(self.basis))

    def test_under_resolved(self):
        """Test quadrature needs at least two cells per mode"""
        uniform = GridDensity(self.space, np.ones((4, 4)))
        with self.assertRaises(UnderResolvedQuadrature):
            target_coefficients(self.basis, uniform, 7)

    def test_mass_warning(self):
        """Test a mixture that leaks out of the box is renormalized with a warning"""
        coarse = GaussianMixture(self.space, [1.0], [[0.0, 0.0]], [np.eye(2) * 0.01])
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            phi = target_coefficients(self.basis, coarse, 8)
        self.assertTrue(any(issubclass(item.category, QuadratureMassWarning) for item in caught))
        self.assertAlmostEqual(phi.values[0], 1.0 / self.basis.normalizers[0], places=12)

    def test_reconstruction_of_smooth_target(self):
        """Test the truncated series follows a smooth density"""
        basis = build_basis(self.space, 12)
        mixture = GaussianMixture(self.space, [1.0], [[1.0, 0.5]], [np.diag([0.2, 0.05])])
        phi = target_coefficients(basis, mixture, 128)
        grid, values = reconstruct(basis, phi, 16)
        self.assertEqual(grid.shape, (16, 16, 2))
        exact = mixture.density(grid)
        self.assertLess(np.max(np.abs(values - exact)), 0.05 * np.max(exact))

    def test_non_finite_coefficients(self):
        """Test coefficient vectors must be finite"""
        with self.assertRaises(ValueError):
            CoefficientVector(np.array([1.0, np.nan]))


class TestCoefficientFiles(TestCase):
    def setUp(self):
        self.setUpPyfakefs()
        self.fs.create_dir(Log.dirname)
        self.space = SearchSpace((1.0, 1.0))
        self.basis = build_basis(self.space, 2)

    def test_basis_table(self):
        """Test the basis table has one row per mode"""
        os.makedirs("/out")
        phi = CoefficientVector(np.arange(4, dtype=float))
        write_basis_table("/out/basis.csv", self.basis, phi)
        with open("/out/basis.csv", encoding="UTF-8") as file:
            rows = file.read().splitlines()
        self.assertEqual(rows[0], "k1,k2,h,lambda,value")
        self.assertEqual(len(rows), 5)
        self.assertTrue(rows[4].startswith("1,1,"))
        self.assertTrue(rows[4].endswith(",3.0"))

    def test_grid_rows_run_along_y(self):
        """Test the grid matrix is written with one row per y cell"""
        os.makedirs("/out")
        values = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
        write_grid_csv("/out/grid.csv", values)
        with open("/out/grid.csv", encoding="UTF-8") as file:
            rows = file.read().splitlines()
        self.assertEqual(rows[0], "1,4")
        self.assertEqual(len(rows), 3)
