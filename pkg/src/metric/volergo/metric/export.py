"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import csv
from typing import Optional, Sequence


def write_metric_trace(path: str, metrics: Sequence[float], wall_ms: Optional[Sequence[float]] = None) -> None:
    """
    Write ``step, ergodic_metric, elapsed_wall_ms`` rows, steps counted from 1.

    Parameters
    ----------
    path: str
        Destination
    metrics: Sequence[float]
        Executed-trajectory metric after every step
    wall_ms: Optional[Sequence[float]]
        Wall time of every step; the column is left empty when omitted
    """
    with open(path, "w", newline="", encoding="UTF-8") as file:
        writer = csv.writer(file)
        writer.writerow(["step", "ergodic_metric", "elapsed_wall_ms"])
        for step, metric in enumerate(metrics, start=1):
            wall = "" if wall_ms is None else "{:.3f}".format(wall_ms[step - 1])
            writer.writerow([step, repr(float(metric)), wall])
