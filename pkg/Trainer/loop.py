# ./Trainer/loop.py
# Epoch loop: shuffle, gather, downsample, slice, forward/backward, Adam step

import json
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from AutoEncoder.backward import backward
from AutoEncoder.checkpoint import save_checkpoint
from AutoEncoder.forward import ALL, apply_input_dropout, bce_loss_and_grad, forward
from AutoEncoder.params import ModelParams, init_params
from BatchSampler.batches import SampledBatch, iterate_epoch_batches
from BatchSampler.epoch import PRNG_NAME, epoch_rng, plan_epoch
from DatasetManager.types import EvalUser, InteractionDataset
from Evaluation.protocol import evaluate_split
from Optimizer.adam import AdamState, apply_gradients, init_adam_state
from Trainer.config import EpochStats, TrainConfig, TrainMode
from utils.errors import NonFiniteError
from utils.logger import error, info, log_trainer

CHECKPOINT_PATTERN = "checkpoint_epoch_{:04d}.ck"
FINAL_CHECKPOINT = "final.ck"
RUN_METADATA = "run.json"

# Stream of epoch_rng reserved for input dropout
DROPOUT_STREAM = 1


def train_step(params: ModelParams, state: AdamState, sb: SampledBatch, cfg: TrainConfig,
               rng: np.random.Generator) -> Tuple[float, int]:
    """One optimizer step on one slice. Returns (mean loss over the slice's users, rows)."""
    dropped = apply_input_dropout(sb, cfg.dropout, rng)
    columns = ALL if sb.full_width else sb.columns
    logits, cache = forward(params, dropped, columns)
    loss, dlogits = bce_loss_and_grad(logits, sb.dense)
    if not np.isfinite(loss):
        raise NonFiniteError("non-finite training loss", loss=loss)
    grads = backward(params, cache, dlogits)
    apply_gradients(params, grads, state)
    return loss, sb.num_rows


def train_epoch(ds: InteractionDataset, params: ModelParams, state: AdamState, cfg: TrainConfig,
                epoch: int) -> EpochStats:
    """One pass over every training user in the epoch's shuffled order."""
    plan = plan_epoch(ds.num_users, cfg.batch_size, cfg.seed, epoch)
    rng = epoch_rng(cfg.seed, epoch, stream=DROPOUT_STREAM)
    batches = iterate_epoch_batches(ds, plan, cfg.effective_slice_rows,
                                    full_width=cfg.mode is TrainMode.FULL, dtype=cfg.np_dtype,
                                    use_prefetch=cfg.prefetch)

    total_loss = 0.0
    total_rows = 0
    sizes = []
    start = time.perf_counter()
    for index, slices, size in tqdm(batches, total=plan.num_batches, desc=f"epoch {epoch + 1}",
                                    leave=False, disable=None):
        sizes.append(size)
        for sb in slices:
            try:
                loss, rows = train_step(params, state, sb, cfg, rng)
            except NonFiniteError as e:
                error(f"Training diverged at epoch {epoch + 1}, batch {index}: {e}")
                raise NonFiniteError("training diverged", epoch=epoch + 1, batch=index, loss=e.loss) from e
            total_loss += loss * rows
            total_rows += rows
        log_trainer(f"epoch {epoch + 1} batch {index}: {len(slices)} slices over {size} columns")
    wall = time.perf_counter() - start

    sizes = np.asarray(sizes, dtype=np.float64)
    return EpochStats(
        epoch=epoch + 1,
        mean_loss=total_loss / total_rows if total_rows else 0.0,
        batches=plan.num_batches,
        mean_sampled_input_size=float(sizes.mean()) if len(sizes) else 0.0,
        std_sampled_input_size=float(sizes.std()) if len(sizes) else 0.0,
        wall_seconds=wall,
        batches_per_second=plan.num_batches / wall if wall > 0 else 0.0,
    )


def _checkpoint_metadata(cfg: TrainConfig, epochs_done: int) -> Dict:
    return {"seed": cfg.seed, "epochs": epochs_done, "prng": PRNG_NAME, "config": cfg.to_dict()}


def write_run_metadata(path: Union[str, Path], cfg: TrainConfig, stats: Sequence[EpochStats],
                       timings: Dict[str, float]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "prng": PRNG_NAME,
        "epochs": [s.to_dict() for s in stats],
        "timings": timings,
    }
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)


def fit(ds: InteractionDataset, cfg: TrainConfig, out_dir: Optional[Union[str, Path]] = None,
        val_users: Optional[List[EvalUser]] = None) -> Tuple[ModelParams, List[EpochStats]]:
    """Initialize, train cfg.epochs epochs and write checkpoints to out_dir if given."""
    cfg.validate()
    out_dir = Path(out_dir) if out_dir is not None else None
    params = init_params(ds.num_items, cfg.hidden_dim, cfg.seed, activation=cfg.activation,
                         dtype=cfg.np_dtype)
    state = init_adam_state(params, cfg.adam_hyper())
    info(f"Training {cfg.mode.value} model: {ds.num_users} users, {ds.num_items} items, "
         f"d={cfg.hidden_dim}, m={cfg.batch_size}, {cfg.epochs} epochs")

    history: List[EpochStats] = []
    start = time.perf_counter()
    for epoch in range(cfg.epochs):
        stats = train_epoch(ds, params, state, cfg, epoch)
        if val_users:
            stats.val_ndcg_at_50 = evaluate_split(params, val_users, ks=[50]).aggregate["ndcg@50"]
        history.append(stats)
        info(
            f"Epoch {stats.epoch}/{cfg.epochs}: loss={stats.mean_loss:.4f} "
            f"input size={stats.mean_sampled_input_size:.0f}±{stats.std_sampled_input_size:.0f} "
            f"{stats.batches_per_second:.2f} batches/s"
            + (f" val ndcg@50={stats.val_ndcg_at_50:.4f}" if stats.val_ndcg_at_50 is not None else "")
        )
        if out_dir is not None and cfg.checkpoint_every and stats.epoch % cfg.checkpoint_every == 0:
            save_checkpoint(params, out_dir / CHECKPOINT_PATTERN.format(stats.epoch),
                            _checkpoint_metadata(cfg, stats.epoch))
    total = time.perf_counter() - start

    if out_dir is not None:
        save_checkpoint(params, out_dir / FINAL_CHECKPOINT, _checkpoint_metadata(cfg, cfg.epochs))
        write_run_metadata(out_dir / RUN_METADATA, cfg, history,
                           {"total_seconds": total, "train_seconds": sum(s.wall_seconds for s in history)})
    return params, history
