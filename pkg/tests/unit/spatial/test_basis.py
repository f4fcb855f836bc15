"""Unit tests for the Volergo Spatial package basis."""

import unittest

import numpy as np
from volergo.spatial import (
    IndexNotInBasis,
    InvalidBasisSize,
    InvalidSearchSpace,
    SearchSpace,
    build_basis,
    eval_basis,
    eval_basis_grad,
)


class TestSearchSpace(unittest.TestCase):
    def test_rejects_bad_lengths(self):
        """Test the box needs two or three positive finite sides"""
        for lengths in ((1.0,), (1.0, 0.0), (1.0, float("inf")), (1.0, 2.0, 3.0, 4.0), ("a", 1.0)):
            with self.assertRaises(InvalidSearchSpace):
                SearchSpace(lengths)

    def test_clamp_and_contains(self):
        """Test clamping puts points on the boundary"""
        space = SearchSpace((2.0, 1.0))
        clamped = space.clamp(np.array([[-1.0, 0.5], [3.0, 2.0]]))
        np.testing.assert_array_equal(clamped, [[0.0, 0.5], [2.0, 1.0]])
        np.testing.assert_array_equal(space.contains(np.array([[1.0, 1.0], [2.1, 0.0]])), [True, False])


class TestBasisSet(unittest.TestCase):
    def setUp(self):
        self.space = SearchSpace((2.0, 1.0))
        self.basis = build_basis(self.space, 3)

    def test_ordering(self):
        """Test modes are ordered lexicographically with the constant mode first"""
        self.assertEqual(len(self.basis), 9)
        np.testing.assert_array_equal(self.basis.indices[0], [0, 0])
        np.testing.assert_array_equal(self.basis.indices[1], [0, 1])
        np.testing.assert_array_equal(self.basis.indices[3], [1, 0])
        self.assertEqual(self.basis.position((2, 1)), 7)
        self.assertEqual(self.basis.weights[0], 1.0)
        self.assertTrue(np.all(np.diff(self.basis.weights[:3]) < 0))

    def test_weights_decrease_with_frequency(self):
        """Test Sobolev weights fall strictly with the index norm over the whole basis"""
        for basis in (self.basis, build_basis(SearchSpace((1.0, 1.0, 1.0)), 4)):
            norms = np.sum(basis.indices**2, axis=1)
            order = np.argsort(norms, kind="stable")
            steps = np.diff(basis.weights[order])
            rising = np.diff(norms[order]) > 0
            self.assertTrue(np.all(steps[rising] < 0))
            np.testing.assert_array_equal(steps[~rising], 0.0)
            self.assertTrue(np.all((basis.weights > 0) & (basis.weights <= 1.0)))

    def test_invalid_sizes(self):
        """Test the number of modes must be a positive integer"""
        for modes in (0, -2, 2.5, True):
            with self.assertRaises(InvalidBasisSize):
                build_basis(self.space, modes)

    def test_index_not_in_basis(self):
        """Test mode lookups outside the truncation"""
        for k in ((3, 0), (0,), (0, 0, 0), (-1, 0)):
            with self.assertRaises(IndexNotInBasis):
                eval_basis(self.basis, k, (0.5, 0.5))

    def test_orthonormal(self):
        """Test the normalized basis is orthonormal under midpoint quadrature"""
        basis = build_basis(self.space, 8)
        axes, cell = self.space.grid_centers(64)
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 2)
        values = basis.evaluate(grid)
        gram = values.T @ values * cell
        np.testing.assert_allclose(gram, np.eye(len(basis)), atol=1e-10)

    def test_three_dimensional(self):
        """Test a 3-D box gives modes_per_dim cubed functions"""
        basis = build_basis(SearchSpace((1.0, 1.0, 2.0)), 2)
        self.assertEqual(len(basis), 8)
        self.assertEqual(basis.evaluate(np.zeros((5, 3))).shape, (5, 8))

    def test_gradient_matches_finite_differences(self):
        """Test analytic gradients against central differences"""
        x = np.array([0.73, 0.31])
        step = 1e-6
        for k in ((1, 0), (2, 1), (1, 2)):
            analytic = eval_basis_grad(self.basis, k, x)
            numeric = np.array(
                [
                    (eval_basis(self.basis, k, x + step * e) - eval_basis(self.basis, k, x - step * e)) / (2 * step)
                    for e in np.eye(2)
                ]
            )
            np.testing.assert_allclose(analytic, numeric, rtol=1e-6, atol=1e-8)

    def test_points_outside_are_clamped(self):
        """Test evaluation outside the box uses the nearest boundary point"""
        outside = self.basis.evaluate(np.array([[-0.5, 1.5]]))
        boundary = self.basis.evaluate(np.array([[0.0, 1.0]]))
        np.testing.assert_array_equal(outside, boundary)

    def test_batched_shapes(self):
        """Test leading axes are kept"""
        points = np.full((4, 3, 2), 0.5)
        self.assertEqual(self.basis.evaluate(points).shape, (4, 3, 9))
        self.assertEqual(self.basis.gradient(points).shape, (4, 3, 9, 2))
