"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from .config import ControllerConfig
from .controller import RecedingHorizonController, StepDiagnostics, StepOutcome, execute_step, plan
from .exceptions import *
from .ilqr import ROLLOUT_FAILURES, ILQRSolver, PlanResult
from .memory import ControllerMemory
from .objective import (
    BoundaryBarrier,
    CostDerivatives,
    ErgodicHorizonCost,
    ErgodicObjective,
    StandardErgodicObjective,
    VolumetricObjective,
)
