# ./Commands/train.py

from Commands.artifacts import load_training_data
from Commands.config import CliConfig
from Trainer.loop import fit


def cmd_train(cfg: CliConfig) -> None:
    cfg.require("data", "out")
    train_cfg = cfg.train_config()
    ds, val_users = load_training_data(cfg.data)
    fit(ds, train_cfg, out_dir=cfg.out, val_users=val_users)
