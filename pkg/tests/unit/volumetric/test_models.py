"""Unit tests for the Volergo Volumetric package footprint models."""

import os
import unittest

import numpy as np
from pyfakefs.fake_filesystem_unittest import TestCase
from volergo.dynamics import DiffDrive2ndOrder, DoubleIntegrator2DOri, Quadcopter12
from volergo.spatial import SearchSpace, build_basis, eval_basis
from volergo.volumetric import (
    CameraBelowGround,
    InvalidModelParameter,
    LidarWedge,
    NonFiniteState,
    Point,
    RaycastCamera,
    RigidBody,
    UnsupportedPose,
    VolumetricModel,
    basis_values,
    basis_values_and_gradients,
    footprint_area,
    load_body_points,
    vol_basis,
    vol_basis_grad,
    write_footprint_csv,
)

FIXTURES_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")
TOOL = np.array([[-0.1, -0.05], [0.1, -0.05], [0.1, 0.05], [-0.1, 0.05], [0.0, 0.0]])


class TestRigidBody(unittest.TestCase):
    def setUp(self):
        self.dyn = DoubleIntegrator2DOri(log=False)
        self.model = RigidBody(TOOL, log=False)
        self.state = np.array([0.4, 0.6, 0.7, 0.1, 0.0, 0.2])

    def test_points_follow_the_pivot(self):
        """Test samples are rotated about the pivot and translated"""
        s = np.array([1.0, 2.0, np.pi / 2, 0.0, 0.0, 0.0])
        points = self.model.sample_points(s, self.dyn)
        np.testing.assert_allclose(points[1], [1.05, 2.1], atol=1e-12)
        np.testing.assert_allclose(points[4], [1.0, 2.0], atol=1e-12)

    def test_closed_form_jacobians(self):
        """Test closed-form Jacobians against the generic finite differences"""
        exact = self.model.sample_jacobians(self.state, self.dyn)
        numeric = VolumetricModel.sample_jacobians(self.model, self.state, self.dyn)
        self.assertEqual(exact.shape, (5, 2, 6))
        np.testing.assert_allclose(exact, numeric, atol=1e-8)
        np.testing.assert_array_equal(exact[..., 3:], 0.0)

    def test_clamped_to_space(self):
        """Test samples beyond the box are clamped onto it"""
        model = RigidBody(TOOL, clamp_to=SearchSpace((1.0, 1.0)), log=False)
        state = np.zeros(6)
        points = model.sample_points(state, self.dyn)
        self.assertTrue(np.all(points >= 0.0))
        real = model.projected_points(state, self.dyn)
        self.assertTrue(np.any(real < 0.0))
        np.testing.assert_array_equal(SearchSpace((1.0, 1.0)).clamp(real), points)

    def test_invalid_inputs(self):
        """Test empty tools, wrong state lengths and non-finite states"""
        with self.assertRaises(InvalidModelParameter):
            RigidBody(np.zeros((0, 2)), log=False)
        with self.assertRaises(InvalidModelParameter):
            self.model.sample_points(np.zeros(5), self.dyn)
        with self.assertRaises(NonFiniteState):
            self.model.sample_points(np.full(6, np.inf), self.dyn)


class TestVolumetricBasis(unittest.TestCase):
    def setUp(self):
        self.space = SearchSpace((1.0, 1.0))
        self.basis = build_basis(self.space, 4)
        self.dyn = DiffDrive2ndOrder(log=False)
        self.state = np.array([0.45, 0.55, 0.3, 0.2, 0.1])

    def test_point_reduces_to_basis(self):
        """Test a single-point footprint gives the plain basis values bit for bit"""
        states = np.array([[0.1, 0.2, 0.0, 0.0, 0.0], [0.7, 0.4, 1.0, 0.0, 0.0]])
        values, gradients = basis_values_and_gradients(self.basis, Point(log=False), self.dyn, states)
        np.testing.assert_array_equal(values, self.basis.evaluate(self.dyn.position(states)))
        np.testing.assert_array_equal(
            gradients, np.matmul(self.basis.gradient(self.dyn.position(states)), self.dyn.position_selector())
        )
        point_value = vol_basis(self.basis, Point(log=False), self.dyn, (1, 2), states[1])
        self.assertEqual(point_value, eval_basis(self.basis, (1, 2), (0.7, 0.4)))

    def test_values_are_sample_means(self):
        """Test volumetric values average the basis over the footprint"""
        model = RigidBody(TOOL, log=False)
        values = basis_values(self.basis, model, self.dyn, self.state)
        points = model.sample_points(self.state, self.dyn)
        np.testing.assert_allclose(values, self.basis.evaluate(points).mean(axis=0), rtol=1e-14)

    def test_gradients_match_finite_differences(self):
        """Test volumetric gradients against central differences of the values"""
        model = RigidBody(TOOL, log=False)
        step = 1e-6
        for k in ((0, 1), (2, 1), (3, 3)):
            analytic = vol_basis_grad(self.basis, model, self.dyn, k, self.state)
            numeric = np.array(
                [
                    (
                        vol_basis(self.basis, model, self.dyn, k, self.state + step * e)
                        - vol_basis(self.basis, model, self.dyn, k, self.state - step * e)
                    )
                    / (2 * step)
                    for e in np.eye(5)
                ]
            )
            np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-7)

    def test_batched_shapes(self):
        """Test leading state axes are preserved"""
        states = np.tile(self.state, (3, 2, 1))
        values, gradients = basis_values_and_gradients(self.basis, RigidBody(TOOL, log=False), self.dyn, states)
        self.assertEqual(values.shape, (3, 2, 16))
        self.assertEqual(gradients.shape, (3, 2, 16, 5))


class TestSensorGradients(unittest.TestCase):
    def setUp(self):
        self.basis = build_basis(SearchSpace((8.0, 8.0)), 4)
        self.rng = np.random.default_rng(11)

    def assert_matches_differences(self, model, dyn, states, step):
        for state in states:
            k = tuple(self.rng.integers(0, 4, size=2))
            analytic = vol_basis_grad(self.basis, model, dyn, k, state)
            numeric = np.array(
                [
                    (
                        vol_basis(self.basis, model, dyn, k, state + step * e)
                        - vol_basis(self.basis, model, dyn, k, state - step * e)
                    )
                    / (2 * step)
                    for e in np.eye(dyn.n_states)
                ]
            )
            np.testing.assert_allclose(analytic, numeric, rtol=1e-4, atol=1e-6)

    def test_lidar(self):
        """Test LiDAR volumetric gradients against central differences at random states"""
        dyn = DiffDrive2ndOrder(log=False)
        lidar = LidarWedge(np.deg2rad(90.0), 0.6, n_radial=4, n_angular=5, log=False)
        states = np.column_stack(
            [
                self.rng.uniform(1.0, 3.0, (20, 2)),
                self.rng.uniform(-np.pi, np.pi, 20),
                self.rng.uniform(-1.0, 1.0, (20, 2)),
            ]
        )
        self.assert_matches_differences(lidar, dyn, states, 1e-6)

    def test_camera(self):
        """Test camera volumetric gradients against central differences at random states"""
        dyn = Quadcopter12(log=False)
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=5, n_v=4, log=False)
        states = np.zeros((20, 12))
        states[:, 0:2] = self.rng.uniform(3.0, 5.0, (20, 2))
        states[:, 2] = self.rng.uniform(0.5, 1.5, 20)
        states[:, 3:5] = self.rng.uniform(-0.2, 0.2, (20, 2))
        states[:, 5] = self.rng.uniform(-np.pi, np.pi, 20)
        states[:, 6:] = self.rng.uniform(-1.0, 1.0, (20, 6))
        self.assert_matches_differences(camera, dyn, states, 1e-5)

    def test_camera_jacobian_step_halving(self):
        """Test camera Jacobians barely move when the difference step shrinks"""
        dyn = Quadcopter12(log=False)
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=5, n_v=4, log=False)
        state = dyn.initial_state((2.0, 2.0), heading=0.7)
        state[2:5] = [1.2, 0.1, -0.15]
        coarse = camera.sample_jacobians(state, dyn)
        fine = camera.sample_jacobians(state, dyn, step=1e-7)
        np.testing.assert_allclose(fine, coarse, rtol=1e-3, atol=1e-6)
        np.testing.assert_array_equal(coarse[..., 6:], 0.0)


class TestSensors(unittest.TestCase):
    def setUp(self):
        self.quad = Quadcopter12(log=False)

    def test_lidar_wedge(self):
        """Test the wedge opens along the heading and stays within range"""
        dyn = DiffDrive2ndOrder(log=False)
        lidar = LidarWedge(np.deg2rad(90.0), 0.5, n_radial=4, n_angular=5, log=False)
        self.assertEqual(lidar.n_samples, 20)
        points = lidar.sample_points(np.array([1.0, 1.0, np.pi / 2, 0.0, 0.0]), dyn)
        offsets = points - [1.0, 1.0]
        self.assertTrue(np.all(np.linalg.norm(offsets, axis=-1) <= 0.5 + 1e-12))
        self.assertTrue(np.all(offsets[:, 1] > 0.0))

    def test_lidar_parameters(self):
        """Test invalid fields of view and ranges"""
        with self.assertRaises(InvalidModelParameter):
            LidarWedge(2 * np.pi, 1.0, log=False)
        with self.assertRaises(InvalidModelParameter):
            LidarWedge(1.0, 0.0, log=False)

    def test_camera_footprint_grows_with_altitude(self):
        """Test doubling the altitude doubles the ground footprint"""
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=5, n_v=4, tilt=0.0, clip_range=100.0, log=False)
        low = self.quad.initial_state((2.0, 2.0), heading=0.4)
        high = low.copy()
        high[2] = 2.0 * low[2]
        near = camera.sample_points(low, self.quad) - [2.0, 2.0]
        far = camera.sample_points(high, self.quad) - [2.0, 2.0]
        np.testing.assert_allclose(far, 2.0 * near, atol=1e-12)
        self.assertAlmostEqual(footprint_area(far + 2.0) / footprint_area(near + 2.0), 4.0)

    def test_camera_tilt_looks_ahead(self):
        """Test a forward tilt moves the footprint along the heading"""
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=5, n_v=4, tilt=np.deg2rad(20.0), log=False)
        points = camera.sample_points(self.quad.initial_state((2.0, 2.0)), self.quad)
        self.assertGreater(points[:, 0].mean(), 2.0)
        self.assertAlmostEqual(points[:, 1].mean(), 2.0)

    def test_camera_clip_range(self):
        """Test rays are cut at the clip range"""
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=3, n_v=3, tilt=0.0, clip_range=0.1, log=False)
        state = self.quad.initial_state((1.0, 1.0))
        offsets = camera.sample_points(state, self.quad) - [1.0, 1.0]
        self.assertTrue(np.all(np.linalg.norm(offsets, axis=-1) <= 0.1 + 1e-12))

    def test_camera_below_ground(self):
        """Test a camera at or under the ground plane is rejected"""
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=2, n_v=2, log=False)
        state = self.quad.initial_state((1.0, 1.0))
        state[2] = 0.0
        with self.assertRaises(CameraBelowGround):
            camera.sample_points(state, self.quad)

    def test_camera_needs_altitude(self):
        """Test ground platforms cannot carry the camera"""
        camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), n_u=2, n_v=2, log=False)
        with self.assertRaises(UnsupportedPose):
            camera.sample_points(np.zeros(5), DiffDrive2ndOrder(log=False))


class TestFootprintFiles(TestCase):
    def setUp(self):
        self.setUpPyfakefs()
        self.fs.add_real_directory(FIXTURES_PATH)

    def test_area(self):
        """Test hull areas including degenerate footprints"""
        self.assertAlmostEqual(footprint_area(np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]])), 1.0)
        self.assertEqual(footprint_area(np.array([[0, 0], [1, 1]])), 0.0)
        self.assertEqual(footprint_area(np.array([[0, 0], [1, 1], [2, 2]])), 0.0)

    def test_load_tool(self):
        """Test the tool fixture loads with its header skipped"""
        points = load_body_points(os.path.join(FIXTURES_PATH, "tool.csv"))
        self.assertEqual(points.shape, (6, 2))
        self.assertAlmostEqual(footprint_area(points), 0.1 * 0.04)

    def test_load_tool_failures(self):
        """Test missing and malformed tool files"""
        with self.assertRaises(InvalidModelParameter):
            load_body_points("/tools/none.csv")
        self.fs.create_file("/tools/bad.csv", contents="0.1,0.2\nzero,0.3\n")
        with self.assertRaises(InvalidModelParameter):
            load_body_points("/tools/bad.csv")

    def test_write_footprints(self):
        """Test footprints are written one row per sample"""
        self.fs.create_dir("/out")
        write_footprint_csv("/out/footprint.csv", np.zeros((2, 3, 2)))
        with open("/out/footprint.csv", encoding="UTF-8") as file:
            rows = file.read().splitlines()
        self.assertEqual(rows[0], "state,sample,x,y")
        self.assertEqual(len(rows), 7)
        self.assertEqual(rows[-1], "1,2,0.0,0.0")
