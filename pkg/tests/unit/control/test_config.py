"""Unit tests for the Volergo Control package settings and memory."""

import unittest

import numpy as np
from volergo.control import ControllerConfig, ControllerMemory, InvalidControllerConfig
from volergo.dynamics import DoubleIntegrator2DOri, Quadcopter12
from volergo.metric import compensated_mean


class TestControllerConfig(unittest.TestCase):
    def test_defaults(self):
        """Test the default settings are valid"""
        config = ControllerConfig()
        self.assertEqual(config.horizon_steps, 20)
        np.testing.assert_array_equal(config.control_weight_matrix(3), 0.01 * np.eye(3))

    def test_invalid_fields_are_named(self):
        """Test every rejected setting reports its own name"""
        cases = {
            "horizon_steps": 1,
            "dt": 0.0,
            "max_iters": 0,
            "backtracking": 1.0,
            "armijo": 0.0,
            "mu_growth": 1.0,
            "mu_shrink": 1.5,
            "mu_floor": 0.0,
            "barrier_weight": -1.0,
            "altitude_band": (2.0, 1.0),
            "control_weight": 0.0,
        }
        for name, value in cases.items():
            with self.subTest(name=name):
                with self.assertRaises(InvalidControllerConfig) as context:
                    ControllerConfig(**{name: value})
                self.assertEqual(context.exception.field, name)

    def test_weight_shapes(self):
        """Test diagonal and full control weights"""
        diagonal = ControllerConfig(control_weight=[1.0, 2.0, 3.0])
        np.testing.assert_array_equal(diagonal.control_weight_matrix(3), np.diag([1.0, 2.0, 3.0]))
        full = ControllerConfig(control_weight=[[2.0, 0.5], [0.5, 1.0]])
        self.assertEqual(full.control_weight_matrix(2)[0, 1], 0.5)
        with self.assertRaises(InvalidControllerConfig):
            diagonal.control_weight_matrix(2)
        with self.assertRaises(InvalidControllerConfig):
            ControllerConfig(control_weight=[[1.0, 2.0], [2.0, 1.0]]).control_weight_matrix(2)
        with self.assertRaises(InvalidControllerConfig):
            ControllerConfig(control_weight=[[1.0, 0.3], [0.0, 1.0]]).control_weight_matrix(2)

    def test_from_section(self):
        """Test unknown keys are ignored and dt comes from the platform"""
        config = ControllerConfig.from_section({"horizon_steps": 5, "dt": 9.0, "unrelated": True}, 0.05)
        self.assertEqual(config.horizon_steps, 5)
        self.assertEqual(config.dt, 0.05)


class TestControllerMemory(unittest.TestCase):
    def test_running_mean(self):
        """Test folding keeps the mean of everything executed"""
        rows = np.array([[1.0, 2.0], [3.0, -2.0], [5.0, 0.5]])
        memory = ControllerMemory.initial(2)
        for row in rows:
            memory = memory.fold(row)
        self.assertEqual(memory.elapsed_steps, 3)
        np.testing.assert_allclose(memory.running_basis_mean, rows.mean(axis=0), rtol=1e-15)

    def test_compose(self):
        """Test composing with a horizon averages over all states"""
        memory = ControllerMemory.initial(2).fold(np.array([1.0, 1.0])).fold(np.array([3.0, 1.0]))
        horizon = np.array([[0.0, 4.0], [4.0, 4.0]])
        np.testing.assert_allclose(memory.compose(horizon), [2.0, 2.5])
        fresh = ControllerMemory.initial(2)
        np.testing.assert_array_equal(fresh.compose(horizon), compensated_mean(horizon))

    def test_warm_start(self):
        """Test the previous tape is shifted and its last control repeated"""
        dyn = DoubleIntegrator2DOri(log=False)
        memory = ControllerMemory.initial(1)
        np.testing.assert_array_equal(memory.warm_start(dyn, 3), np.zeros((3, 3)))
        tape = np.arange(9.0).reshape(3, 3)
        shifted = memory.fold(np.zeros(1), plan=tape).warm_start(dyn, 3)
        np.testing.assert_array_equal(shifted, [[3, 4, 5], [6, 7, 8], [6, 7, 8]])
        quad = Quadcopter12(log=False)
        np.testing.assert_array_equal(memory.warm_start(quad, 2)[:, 0], [9.81, 9.81])

    def test_executed_metric(self):
        """Test the metric of an empty history is undefined"""
        memory = ControllerMemory.initial(2)
        self.assertTrue(np.isnan(memory.executed_metric(np.zeros(2), np.ones(2))))
        memory = memory.fold(np.array([1.0, 0.0]))
        self.assertEqual(memory.executed_metric(np.zeros(2), np.array([1.0, 0.5])), 1.0)
