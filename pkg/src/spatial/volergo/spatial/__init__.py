"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from .basis import BasisSet, build_basis, eval_basis, eval_basis_grad
from .coefficients import CoefficientVector, reconstruct, target_coefficients, write_basis_table, write_grid_csv
from .distributions import GaussianMixture, GridDensity, TargetDistribution, randomized_mixture, sample_gmm
from .exceptions import *
from .grids import load_grid_density, read_pgm
from .space import SearchSpace
