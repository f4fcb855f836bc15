"""Unit tests for the Volergo Dynamics package platforms."""

import unittest

import numpy as np
from volergo.dynamics import (
    DiffDrive2ndOrder,
    DoubleIntegrator2DOri,
    DynamicsModel,
    GimbalLock,
    IntegrationBlowUp,
    InvalidTimeStep,
    LayoutMismatch,
    NonFiniteInput,
    Quadcopter12,
    build_platform,
    wrap_angle,
)


def integration_error(dyn, s0: np.ndarray, u: np.ndarray, duration: float, dt: float, reference: np.ndarray) -> float:
    state = s0.copy()
    for _ in range(int(round(duration / dt))):
        state = dyn.step_rk4(state, u, dt)
    return float(np.linalg.norm(dyn.state_difference(state, reference)))


def observed_order(dyn, s0: np.ndarray, u: np.ndarray, duration: float) -> float:
    reference = s0.copy()
    for _ in range(int(round(duration / (0.1 / 64)))):
        reference = dyn.step_rk4(reference, u, 0.1 / 64)
    coarse = integration_error(dyn, s0, u, duration, 0.1, reference)
    fine = integration_error(dyn, s0, u, duration, 0.05, reference)
    return float(np.log2(coarse / fine))


class TestWrapAngle(unittest.TestCase):
    def test_half_open_interval(self):
        """Test angles land in (-pi, pi]"""
        wrapped = wrap_angle(np.array([np.pi, -np.pi, 3 * np.pi / 2, -3 * np.pi / 2, 0.25]))
        np.testing.assert_allclose(wrapped, [np.pi, np.pi, -np.pi / 2, np.pi / 2, 0.25])


class TestDoubleIntegrator(unittest.TestCase):
    def setUp(self):
        self.dyn = DoubleIntegrator2DOri(log=False)

    def test_step_is_exact(self):
        """Test RK4 integrates constant acceleration exactly"""
        s = np.array([0.0, 1.0, 0.0, 1.0, 0.0, 0.0])
        u = np.array([0.5, -1.0, 0.0])
        nxt = self.dyn.step_rk4(s, u, 0.2)
        np.testing.assert_allclose(nxt, [0.2 + 0.01, 1.0 - 0.02, 0.0, 1.1, -0.2, 0.0], atol=1e-14)

    def test_controls_are_clamped(self):
        """Test controls beyond the limits act as the limits"""
        s = np.zeros(6)
        clamped = self.dyn.step_rk4(s, np.array([5.0, -5.0, 9.0]), 0.1)
        limit = self.dyn.step_rk4(s, np.array([1.0, -1.0, 2.0]), 0.1)
        np.testing.assert_array_equal(clamped, limit)

    def test_heading_wraps(self):
        """Test the heading stays in (-pi, pi] after a step"""
        s = np.array([0.0, 0.0, np.pi - 0.01, 0.0, 0.0, 1.0])
        nxt = self.dyn.step_rk4(s, np.zeros(3), 0.1)
        self.assertLess(nxt[2], 0.0)
        self.assertAlmostEqual(nxt[2], -np.pi + 0.09)

    def test_analytic_matches_finite_differences(self):
        """Test the exact horizon Jacobians agree with the generic ones"""
        states = np.tile(np.array([0.3, 0.2, 0.1, 0.0, 0.5, -0.2]), (3, 1))
        controls = np.tile(np.array([0.1, -0.2, 0.3]), (3, 1))
        a, b = self.dyn.linearize_batch(states, controls, 0.1)
        self.assertEqual(a.shape, (3, 6, 6))
        fd_a, fd_b = self.dyn.linearize(states[0], controls[0], 0.1)
        np.testing.assert_allclose(a[0], fd_a, atol=1e-8)
        np.testing.assert_allclose(b[1], fd_b, atol=1e-8)

    def test_saturated_controls_have_no_influence(self):
        """Test controls on or beyond a bound get zero columns in B"""
        states = np.tile(np.array([0.3, 0.2, 0.1, 0.0, 0.5, -0.2]), (2, 1))
        controls = np.array([[5.0, 0.2, 0.0], [0.0, -1.0, 0.5]])
        _, b = self.dyn.linearize_batch(states, controls, 0.1)
        _, fd_b = DynamicsModel.linearize_batch(self.dyn, states, controls, 0.1)
        for horizon_b in (b, fd_b):
            np.testing.assert_array_equal(horizon_b[0][:, 0], 0.0)
            np.testing.assert_array_equal(horizon_b[1][:, 1], 0.0)
            self.assertGreater(np.abs(horizon_b[0][:, 1]).max(), 0.0)
            self.assertGreater(np.abs(horizon_b[1][:, 2]).max(), 0.0)
        np.testing.assert_allclose(b, fd_b, atol=1e-8)

    def test_rk4_is_exact(self):
        """Test piecewise-constant acceleration is integrated without truncation error"""
        s0 = np.array([0.1, 0.2, 0.3, 0.5, -0.4, 0.2])
        u = np.array([0.3, -0.2, 0.5])
        exact = np.concatenate([s0[:3] + 2.0 * s0[3:] + 2.0 * u, s0[3:] + 2.0 * u])
        for dt in (0.1, 0.05):
            self.assertLess(integration_error(self.dyn, s0, u, 2.0, dt, exact), 1e-12)

    def test_bad_inputs(self):
        """Test time step, layout and finiteness checks"""
        with self.assertRaises(InvalidTimeStep):
            self.dyn.step_rk4(np.zeros(6), np.zeros(3), 0.0)
        with self.assertRaises(InvalidTimeStep):
            self.dyn.linearize_batch(np.zeros((1, 6)), np.zeros((1, 3)), -1.0)
        with self.assertRaises(LayoutMismatch):
            self.dyn.step_rk4(np.zeros(5), np.zeros(3), 0.1)
        with self.assertRaises(NonFiniteInput):
            self.dyn.step_rk4(np.full(6, np.nan), np.zeros(3), 0.1)

    def test_batched_step(self):
        """Test a batch of states steps like each state alone"""
        states = np.array([[0.0, 0.0, 0.0, 1.0, 0.0, 0.0], [1.0, 1.0, 1.0, 0.0, 1.0, 0.5]])
        batch = self.dyn.step_rk4(states, np.array([0.1, 0.2, 0.3]), 0.1)
        for row, state in enumerate(states):
            np.testing.assert_allclose(batch[row], self.dyn.step_rk4(state, np.array([0.1, 0.2, 0.3]), 0.1))

    def test_position_selector(self):
        """Test the selector picks x and y"""
        s = np.arange(6, dtype=float)
        np.testing.assert_array_equal(self.dyn.position_selector() @ s, self.dyn.position(s))
        self.assertEqual(self.dyn.pose_columns(), (0, 1, 2))


class TestDiffDrive(unittest.TestCase):
    def test_straight_line(self):
        """Test driving along the heading"""
        dyn = DiffDrive2ndOrder(log=False)
        s = dyn.initial_state((1.0, 1.0), heading=np.pi / 2)
        s[3] = 1.0
        nxt = dyn.step_rk4(s, np.zeros(2), 0.5)
        np.testing.assert_allclose(nxt[:2], [1.0, 1.5], atol=1e-12)

    def test_linearization_matches_perturbation(self):
        """Test the Jacobians predict a small perturbation"""
        dyn = DiffDrive2ndOrder(log=False)
        s = np.array([0.5, 0.5, 0.3, 0.4, 0.2])
        u = np.array([0.1, -0.1])
        a, b = dyn.linearize(s, u, 0.1)
        ds, du = 1e-5 * np.array([1.0, -2.0, 0.5, 1.0, -1.0]), 1e-5 * np.array([0.3, 0.7])
        predicted = dyn.step_rk4(s, u, 0.1) + a @ ds + b @ du
        np.testing.assert_allclose(dyn.step_rk4(s + ds, u + du, 0.1), predicted, atol=1e-9)

    def test_rk4_order(self):
        """Test the observed convergence order of RK4 under halving the step"""
        dyn = DiffDrive2ndOrder(log=False)
        s0 = np.array([0.2, 0.1, 0.3, 0.8, 0.5])
        self.assertGreaterEqual(observed_order(dyn, s0, np.array([0.3, -0.4]), 2.0), 3.8)


class TestQuadcopter(unittest.TestCase):
    def setUp(self):
        self.dyn = Quadcopter12(log=False)

    def test_hover(self):
        """Test the trim thrust holds the vehicle still"""
        s = self.dyn.initial_state((1.0, 1.0), heading=0.3)
        nxt = self.dyn.step_rk4(s, self.dyn.nominal_control(), 0.1)
        np.testing.assert_allclose(nxt, s, atol=1e-12)

    def test_free_fall(self):
        """Test zero thrust falls with gravity"""
        s = self.dyn.initial_state((0.0, 0.0))
        nxt = self.dyn.step_rk4(s, np.zeros(4), 0.1)
        self.assertAlmostEqual(nxt[8], -0.981)
        self.assertAlmostEqual(nxt[2], 0.5 - 0.5 * 9.81 * 0.01)

    def test_rk4_order(self):
        """Test the observed convergence order of RK4 under halving the step"""
        s0 = self.dyn.initial_state((0.5, 0.5), heading=0.2)
        s0[3:5] = [0.1, -0.05]
        s0[9:12] = [0.5, -0.3, 0.4]
        u = np.array([1.05 * 9.81, 0.005, -0.004, 0.003])
        self.assertGreaterEqual(observed_order(self.dyn, s0, u, 1.0), 3.8)

    def test_gimbal_lock(self):
        """Test a pitch at the Euler singularity is rejected"""
        s = self.dyn.initial_state((0.0, 0.0))
        s[4] = np.pi / 2
        with self.assertRaises(GimbalLock):
            self.dyn.step_rk4(s, self.dyn.nominal_control(), 0.1)

    def test_blow_up(self):
        """Test a step that overflows is reported"""
        s = self.dyn.initial_state((0.0, 0.0))
        s[9:12] = 1e200
        with np.errstate(over="ignore", invalid="ignore"):
            with self.assertRaises(IntegrationBlowUp):
                self.dyn.step_rk4(s, self.dyn.nominal_control(), 0.1)

    def test_build_platform(self):
        """Test platforms are built from their config sections"""
        dyn = build_platform("quadcopter", {"mass": 2.0, "dt": 0.05}, log=False)
        self.assertEqual(dyn.nominal_control()[0], 2.0 * 9.81)
        with self.assertRaises(KeyError):
            build_platform("submarine", {})
