"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from .benchmark import BenchmarkReport, MethodSummary, run_benchmark, summarize
from .exceptions import *
from .export import build_basis_from, format_summary_table, trial_directory, write_report, write_trial
from .progress import ErasingProgress, MetricOnlyProgress, SearchProgress, TaskProgress
from .scenario import SUITE_PLATFORMS, Scenario, build_scenario, resolve_platform, sample_spacing
from .shapes import TARGET_SHAPES, TOOL_SHAPES, mask_grid, occupied_centers, target_density, tool_points
from .trial import TrialRecord, q1_metric_trace, run_trial
