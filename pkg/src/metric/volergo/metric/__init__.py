"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from volergo.spatial import CoefficientVector

from .coefficients import (
    as_state_array,
    compensated_mean,
    compensated_sum,
    compose_coefficients,
    standard_coefficients,
    trajectory_coefficients,
)
from .ergodic import ergodic_metric, metric_gradient_from, metric_state_gradient, standard_metric_state_gradient
from .exceptions import *
from .export import write_metric_trace
from .records import TrajectoryRecord
