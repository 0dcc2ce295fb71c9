# ./Commands/evaluate.py

from pathlib import Path

from Commands.artifacts import load_model_for, load_split_users, load_training_data
from Commands.config import CliConfig
from Evaluation.protocol import evaluate_split, write_report


def cmd_evaluate(cfg: CliConfig) -> None:
    """Evaluate a checkpoint on the validation or test users and write the JSON report."""
    cfg.require("data", "checkpoint", "out")
    eval_cfg = cfg.eval_config()
    ds, _ = load_training_data(cfg.data)
    params = load_model_for(ds, cfg.checkpoint)
    users = load_split_users(cfg.data, cfg.split)
    report = evaluate_split(params, users, config=eval_cfg)

    out = Path(cfg.out)
    path = out if out.suffix == ".json" else out / f"eval_{cfg.split}.json"
    echo = {"checkpoint": str(cfg.checkpoint), "data": str(cfg.data), "split": cfg.split, **eval_cfg.to_dict()}
    write_report(report, path, config=echo, per_user=cfg.per_user)
