"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

constants = {
    "SchemaFile": "config.schema.json",
    "ResolvedConfigName": "config.resolved.json",
    "OutputRootEnv": "VOLERGO_OUTPUT_ROOT",
    "JobsEnv": "VOLERGO_JOBS",
    "ExitSuccess": 0,
    "ExitConfigError": 1,
    "ExitTrialFailure": 2,
    "Suites": ("q1", "erasing", "ground", "aerial"),
    "Methods": ("vec", "baseline"),
    "Platforms": ("double_integrator", "diff_drive", "quadcopter"),
}
