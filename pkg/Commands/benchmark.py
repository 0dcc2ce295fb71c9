# ./Commands/benchmark.py

import json
from pathlib import Path

from Commands.artifacts import load_training_data
from Commands.config import CliConfig
from Trainer.benchmark import benchmark
from utils.logger import info

BENCHMARK_FILE = "benchmark.json"


def cmd_benchmark(cfg: CliConfig) -> None:
    cfg.require("data", "out")
    train_cfg = cfg.train_config()
    ds, _ = load_training_data(cfg.data)
    report = benchmark(ds, train_cfg, cfg.warmup_batches, cfg.timed_batches)

    out = Path(cfg.out)
    path = out if out.suffix == ".json" else out / BENCHMARK_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump({"config": train_cfg.to_dict(), **report.to_dict()}, f, indent=2, sort_keys=True)
    info(f"Wrote benchmark report to {path}")
