import numpy as np

from volergo.core import RunConfig
from volergo.tasks import run_trial

# -----------------------------------------------------
# Run one erasing trial with each method on the same seed
# -----------------------------------------------------
# Smaller basis and horizon than the defaults so the sample finishes quickly

config = RunConfig.load(overrides=["--basis.modes_per_dim=6", "--controller.horizon_steps=10"])

for method in ("vec", "baseline"):
    print(f"...Run the {method} controller\n")
    record = run_trial(config, "erasing", method, seed=0)
    if record.completion_step is not None:
        print(f"{method}: erased every point at step {record.completion_step}")
    else:
        print(f"{method}: {record.progress_trace[-1]:.0%} erased after {record.steps} steps")

    # -----------------------------------------------------
    # How did the ergodic metric evolve
    # -----------------------------------------------------
    trace = np.array(record.metric_trace)
    print(f"metric {trace[0]:.4f} -> {trace[-1]:.4f}, lowest {trace.min():.4f}\n")
