"""Unit tests for the Volergo Tasks package shapes and progress trackers."""

import unittest

import numpy as np
from volergo.spatial import SearchSpace
from volergo.tasks import (
    TARGET_SHAPES,
    TOOL_SHAPES,
    ErasingProgress,
    MetricOnlyProgress,
    SearchProgress,
    UnknownShape,
    mask_grid,
    occupied_centers,
    target_density,
    tool_points,
)


class TestToolPoints(unittest.TestCase):
    def test_sample_count_and_extent(self):
        """Test every tool fills its box with roughly the requested number of samples"""
        for name in TOOL_SHAPES:
            with self.subTest(tool=name):
                points = tool_points(name, 0.2, 40, np.random.default_rng(1))
                self.assertLessEqual(abs(points.shape[0] - 40), 12)
                extent = points.max(axis=0) - points.min(axis=0)
                self.assertTrue(np.all(extent <= 0.2 + 1e-12))

    def test_pivot_depends_on_generator(self):
        """Test the pivot is the only random part of a tool"""
        first = tool_points("cross", 0.3, 30, np.random.default_rng(7))
        again = tool_points("cross", 0.3, 30, np.random.default_rng(7))
        other = tool_points("cross", 0.3, 30, np.random.default_rng(8))
        np.testing.assert_array_equal(first, again)
        self.assertEqual(first.shape, other.shape)
        offset = first - other
        np.testing.assert_allclose(offset, np.broadcast_to(offset[0], offset.shape), atol=1e-12)

    def test_unknown_shapes(self):
        """Test unknown tool and target names"""
        with self.assertRaises(UnknownShape):
            tool_points("spoon", 0.2, 10, np.random.default_rng(0))
        with self.assertRaises(UnknownShape):
            mask_grid("spoon", 8, 0.8)


class TestTargets(unittest.TestCase):
    def test_every_target_has_cells(self):
        """Test all target shapes rasterize to a non-empty mask"""
        for name in TARGET_SHAPES:
            with self.subTest(target=name):
                self.assertTrue(mask_grid(name, 32, 0.8).any())

    def test_ring_has_a_hole(self):
        """Test the ring leaves its center free and fills its band"""
        mask = mask_grid("ring", 20, 1.0)
        self.assertFalse(mask[9, 9])
        self.assertTrue(mask[1, 10])

    def test_density_and_centers(self):
        """Test a target density is uniform over the occupied cells"""
        space = SearchSpace((2.0, 1.0))
        density = target_density("cross", space, 16, 0.8)
        occupied = mask_grid("cross", 16, 0.8)
        self.assertAlmostEqual(float(density.values.sum() * density.cell_volume), 1.0)
        self.assertEqual(len(np.unique(density.values[occupied])), 1)
        centers = occupied_centers(density)
        self.assertEqual(centers.shape, (int(occupied.sum()), 2))
        self.assertTrue(np.all(space.contains(centers)))


class TestProgress(unittest.TestCase):
    def test_erasing(self):
        """Test points are erased within the radius and completion needs all of them"""
        progress = ErasingProgress(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), 0.3)
        self.assertFalse(progress.update(np.array([[0.1, 0.0], [0.5, 0.5]])))
        self.assertAlmostEqual(progress.fraction, 1.0 / 3.0)
        self.assertTrue(progress.update(np.array([[1.0, 0.1], [2.2, 0.0]])))
        self.assertTrue(progress.complete)

    def test_search(self):
        """Test targets are found within the detection radius"""
        progress = SearchProgress(np.array([[0.0, 0.0], [1.0, 1.0]]), 0.2)
        self.assertFalse(progress.update(np.array([[0.1, 0.0], [5.0, 5.0]])))
        self.assertEqual(progress.fraction, 0.5)
        self.assertFalse(progress.update(np.array([[1.5, 1.5]])))
        self.assertTrue(progress.update(np.array([[1.0, 1.1]])))

    def test_invalid_trackers(self):
        """Test empty target sets and non-positive radii"""
        with self.assertRaises(ValueError):
            ErasingProgress(np.zeros((0, 2)), 0.1)
        with self.assertRaises(ValueError):
            SearchProgress(np.zeros((1, 2)), 0.0)

    def test_metric_only(self):
        """Test the q1 tracker never completes"""
        progress = MetricOnlyProgress()
        self.assertFalse(progress.update(np.zeros((3, 2))))
        self.assertEqual(progress.fraction, 0.0)
