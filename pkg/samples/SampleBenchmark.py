from volergo.core import RunConfig
from volergo.tasks import format_summary_table, run_benchmark, write_report

# -----------------------------------------------------
# Run the ground search suite from a configuration file
# -----------------------------------------------------
# bench.yaml sits next to this script; VOLERGO_OUTPUT_ROOT and VOLERGO_JOBS still apply

config = RunConfig.load("bench.yaml")
report = run_benchmark(config, "ground")

# -----------------------------------------------------
# Write per-trial and per-suite files, then print the aggregates
# -----------------------------------------------------

write_report(f"{config.output_root}/ground", config, report)
print(format_summary_table(report))
if report.step_ratio is not None:
    print(f"The volumetric controller needed {report.step_ratio:.0%} of the baseline's median steps")
