"""Unit tests for the Volergo Spatial package target distributions."""

import os

import numpy as np
from pyfakefs.fake_filesystem_unittest import TestCase
from volergo.spatial import (
    DegenerateCovariance,
    GaussianMixture,
    GridDensity,
    GridFileUnreadable,
    InvalidMixtureWeights,
    RejectionBudgetExhausted,
    SearchSpace,
    load_grid_density,
    randomized_mixture,
    sample_gmm,
)

FIXTURES_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


class TestGaussianMixture(TestCase):
    def setUp(self):
        self.space = SearchSpace((1.0, 1.0))
        self.mixture = GaussianMixture(
            self.space, [0.5, 0.5], [[0.25, 0.25], [0.75, 0.6]], [np.eye(2) * 0.01, np.diag([0.02, 0.005])]
        )

    def test_invalid_weights(self):
        """Test weights must be non-negative and sum to one"""
        for weights in ([0.5, 0.4], [1.5, -0.5], []):
            with self.assertRaises(InvalidMixtureWeights):
                covariances = np.tile(np.eye(2), (len(weights), 1, 1))
                GaussianMixture(self.space, weights, np.zeros((len(weights), 2)), covariances)

    def test_degenerate_covariance(self):
        """Test singular and asymmetric covariances are rejected"""
        with self.assertRaises(DegenerateCovariance):
            GaussianMixture(self.space, [1.0], [[0.5, 0.5]], [np.zeros((2, 2))])
        with self.assertRaises(DegenerateCovariance):
            GaussianMixture(self.space, [1.0], [[0.5, 0.5]], [[[1.0, 0.5], [0.0, 1.0]]])

    def test_density_is_truncated(self):
        """Test the density vanishes outside the box"""
        self.assertEqual(self.mixture.density(np.array([1.2, 0.5])), 0.0)
        self.assertGreater(self.mixture.density(np.array([0.25, 0.25])), 0.0)

    def test_samples_inside_and_reproducible(self):
        """Test samples stay inside the box and depend only on the seed"""
        first = sample_gmm(self.mixture, 500, seed=3)
        second = sample_gmm(self.mixture, 500, seed=3)
        self.assertEqual(first.shape, (500, 2))
        self.assertTrue(np.all(self.space.contains(first)))
        np.testing.assert_array_equal(first, second)
        self.assertFalse(np.array_equal(first, sample_gmm(self.mixture, 500, seed=4)))

    def test_component_proportions(self):
        """Test samples split between two equal-weight components in proportion"""
        covariances = np.tile(np.eye(2) * 1e-3, (2, 1, 1))
        mixture = GaussianMixture(self.space, [0.5, 0.5], [[0.25, 0.5], [0.75, 0.5]], covariances)
        points = sample_gmm(mixture, 100000, seed=8)
        self.assertAlmostEqual(float(np.mean(points[:, 0] < 0.5)), 0.5, delta=0.01)

    def test_rejection_budget(self):
        """Test a mixture with its mass outside the box exhausts the rejection budget"""
        mixture = GaussianMixture(self.space, [1.0], [[3.0, 3.0]], [np.eye(2) * 0.01])
        with self.assertRaises(RejectionBudgetExhausted):
            sample_gmm(mixture, 5, seed=0)

    def test_sample_count(self):
        """Test at least one sample is requested"""
        with self.assertRaises(ValueError):
            sample_gmm(self.mixture, 0)

    def test_randomized_mixture(self):
        """Test randomized mixtures keep their weights and place means in the inner region"""
        rng = np.random.default_rng(0)
        mixture = randomized_mixture(SearchSpace((2.0, 1.0)), [1.0, 1.0, 2.0], rng)
        np.testing.assert_allclose(mixture.weights, [0.25, 0.25, 0.5])
        self.assertTrue(np.all(mixture.means >= [0.2, 0.1]))
        self.assertTrue(np.all(mixture.means <= [1.8, 0.9]))
        for covariance in mixture.covariances:
            eigen = np.linalg.eigvalsh(covariance)
            self.assertTrue(np.all(eigen >= 0.005 - 1e-12))
            self.assertTrue(np.all(eigen <= 0.02 + 1e-12))


class TestGridDensity(TestCase):
    def setUp(self):
        self.setUpPyfakefs()
        self.fs.add_real_directory(FIXTURES_PATH)

    def test_normalized(self):
        """Test grid values are scaled to unit mass"""
        density = GridDensity(SearchSpace((2.0, 1.0)), np.ones((4, 2)))
        self.assertAlmostEqual(float(density.values.sum() * density.cell_volume), 1.0)
        self.assertAlmostEqual(float(density.density(np.array([1.9, 0.1]))), 0.5)

    def test_rejects_negative_or_empty(self):
        """Test grids need non-negative values and some mass"""
        with self.assertRaises(ValueError):
            GridDensity(SearchSpace((1.0, 1.0)), -np.ones((2, 2)))
        with self.assertRaises(ValueError):
            GridDensity(SearchSpace((1.0, 1.0)), np.zeros((2, 2)))

    def test_pgm_columns_run_along_x(self):
        """Test a PGM image maps its columns to x"""
        density = load_grid_density(os.path.join(FIXTURES_PATH, "target.pgm"), SearchSpace((4.0, 3.0)))
        self.assertEqual(density.values.shape, (4, 3))
        self.assertGreater(float(density.density(np.array([2.5, 0.5]))), 0.0)
        self.assertEqual(float(density.density(np.array([0.5, 2.5]))), 0.0)

    def test_binary_pgm(self):
        """Test a binary PGM raster is read row by row"""
        self.fs.create_file("/data/binary.pgm", contents=b"P5\n2 2\n255\n" + bytes([0, 10, 20, 30]))
        density = load_grid_density("/data/binary.pgm", SearchSpace((1.0, 1.0)))
        self.assertAlmostEqual(float(density.density(np.array([0.75, 0.25]))), 10.0 / 15.0)
        self.assertAlmostEqual(float(density.density(np.array([0.25, 0.75]))), 20.0 / 15.0)

    def test_csv_matrix(self):
        """Test a CSV matrix with its first row at y = 0"""
        self.fs.create_file("/data/grid.csv", contents="1,0\n0,0\n")
        density = load_grid_density("/data/grid.csv", SearchSpace((1.0, 1.0)))
        self.assertAlmostEqual(float(density.density(np.array([0.25, 0.25]))), 4.0)
        self.assertEqual(float(density.density(np.array([0.25, 0.75]))), 0.0)

    def test_unreadable(self):
        """Test missing files, bad rasters and 3-D spaces"""
        with self.assertRaises(GridFileUnreadable):
            load_grid_density("/data/none.pgm", SearchSpace((1.0, 1.0)))
        for name, contents in (("text", "not a graymap\n"), ("empty", "")):
            self.fs.create_file("/data/{}.pgm".format(name), contents=contents)
            with self.assertRaises(GridFileUnreadable):
                load_grid_density("/data/{}.pgm".format(name), SearchSpace((1.0, 1.0)))
        with self.assertRaises(GridFileUnreadable):
            load_grid_density(os.path.join(FIXTURES_PATH, "target.pgm"), SearchSpace((1.0, 1.0, 1.0)))
