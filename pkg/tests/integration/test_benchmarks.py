"""Integration tests for the Volergo benchmark suites.

These run the closed-loop controller at the default problem sizes and take a long time;
set ``VOLERGO_RUN_BENCHMARKS=1`` to enable them.
"""

import os
import unittest

from volergo.core import Log, RunConfig
from volergo.tasks import run_benchmark

RUN_BENCHMARKS = os.environ.get("VOLERGO_RUN_BENCHMARKS", "") not in ("", "0")
N_TRIALS = int(os.environ.get("VOLERGO_BENCHMARK_TRIALS", "3"))


@unittest.skipUnless(RUN_BENCHMARKS, "set VOLERGO_RUN_BENCHMARKS=1 to run the benchmark suites")
class TestBenchmarkSuites(unittest.TestCase):
    """Benchmark suites at their default configuration."""

    def setUp(self):
        Log.close_console_output()
        self.addCleanup(Log.open_console_output)
        self.config = RunConfig.load(environ={})

    def test_q1_metric_decreases_on_every_platform(self):
        """Test the executed metric ends below where it started for every platform and seed"""
        report = run_benchmark(self.config, "q1", n_trials=N_TRIALS)
        self.assertEqual(len(report.records), 3 * N_TRIALS)
        for record in report.records:
            self.assertIsNone(record.failure, record.platform)
            self.assertLess(record.metric_trace[-1], record.metric_trace[0], (record.platform, record.seed))

    def test_erasing_volumetric_completes_faster(self):
        """Test the volumetric controller erases at least as often and in fewer steps"""
        report = run_benchmark(self.config, "erasing", n_trials=N_TRIALS)
        vec, baseline = report.summary("vec"), report.summary("baseline")
        self.assertGreaterEqual(vec.successes, baseline.successes)
        self.assertLessEqual(report.step_ratio, 1.0)

    def test_ground_search(self):
        """Test the lidar-footprint controller finds the targets at least as often"""
        report = run_benchmark(self.config, "ground", n_trials=N_TRIALS)
        self.assertGreaterEqual(report.summary("vec").successes, report.summary("baseline").successes)
        self.assertFalse(report.all_failed)

    def test_aerial_search(self):
        """Test the camera-footprint controller finds the targets at least as often"""
        report = run_benchmark(self.config, "aerial", n_trials=N_TRIALS)
        vec = report.summary("vec", "quadcopter")
        self.assertGreaterEqual(vec.successes, report.summary("baseline", "quadcopter").successes)
        self.assertIn("mean_mid_trial_area_ratio", vec.extras)
