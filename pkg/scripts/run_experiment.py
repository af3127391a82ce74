#!/usr/bin/env python3
"""Run the full classifier x feature grid on the shipped fixtures.

Writes the text report to stdout and the JSON report to
reports/experiment.json.  Takes an optional alternative config path.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from senselex.learners.experiment import ExperimentConfig, run_experiment  # noqa: E402

REPO = pathlib.Path(__file__).resolve().parent.parent


def main() -> None:
    config_path = sys.argv[1] if len(sys.argv) > 1 else str(
        REPO / "fixtures" / "experiment.cfg")
    cfg = ExperimentConfig.from_file(config_path)
    result = run_experiment(cfg)
    print("accuracy (% mean ± std over seeds)")
    print(result.render_accuracy_table())
    print()
    print("neural network detail (macro averages over seeds)")
    print(result.render_mlp_table())
    out_dir = REPO / "reports"
    out_dir.mkdir(exist_ok=True)
    out_path = out_dir / "experiment.json"
    out_path.write_text(result.render_json() + "\n", encoding="utf-8")
    print(f"\nJSON report: {out_path}")


if __name__ == "__main__":
    main()
