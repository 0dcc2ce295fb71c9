# ./Commands/compare.py

import json
from pathlib import Path
from typing import Dict

from Commands.config import CliConfig
from Evaluation.protocol import compare_reports
from utils.errors import ConfigError
from utils.logger import info


def _read_report(path) -> Dict:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: not a JSON report: {e}") from e


def cmd_compare(cfg: CliConfig) -> None:
    """Relative metric change from a baseline report to a candidate report."""
    cfg.require("baseline", "candidate")
    comparison = compare_reports(_read_report(cfg.baseline), _read_report(cfg.candidate))
    for name, row in comparison.items():
        change = row["relative_change"]
        info(f"{name}: {row['baseline']:.4f} -> {row['candidate']:.4f} "
             + (f"({100 * change:+.2f}%)" if change is not None else "(baseline is zero)"))
    if cfg.out:
        out = Path(cfg.out)
        path = out if out.suffix == ".json" else out / "comparison.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump({"baseline": str(cfg.baseline), "candidate": str(cfg.candidate),
                       "metrics": comparison}, f, indent=2, sort_keys=True)
