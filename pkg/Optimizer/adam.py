# ./Optimizer/adam.py
# Adam with coupled L2 weight decay and lazy row-wise updates

from dataclasses import dataclass, field
from typing import Dict, Union

import numpy as np

from AutoEncoder.backward import Gradients
from AutoEncoder.params import ModelParams
from utils.errors import InvalidInputError, NonFiniteError, ShapeMismatchError

# Groups whose rows are keyed by item and can be updated lazily
SPARSE_GROUPS = ("W_enc", "W_dec", "b_dec")
BIAS_GROUPS = ("b_enc", "b_dec")


@dataclass
class AdamHyper:
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 0.0
    decay_biases: bool = False


@dataclass
class GroupState:
    """Moments for one parameter group.

    `steps` holds one counter per row for sparse groups and a 0-d counter for dense groups.
    """
    m1: np.ndarray
    m2: np.ndarray
    steps: np.ndarray
    sparse: bool
    decay: bool


@dataclass
class AdamState:
    hyper: AdamHyper
    groups: Dict[str, GroupState] = field(default_factory=dict)


def init_group(param: np.ndarray, sparse: bool, decay: bool) -> GroupState:
    steps = np.zeros(param.shape[0], dtype=np.int64) if sparse else np.zeros((), dtype=np.int64)
    return GroupState(m1=np.zeros_like(param), m2=np.zeros_like(param), steps=steps,
                      sparse=sparse, decay=decay)


def init_adam_state(params: ModelParams, hyper: AdamHyper) -> AdamState:
    state = AdamState(hyper=hyper)
    for name, param in params.groups().items():
        decay = hyper.decay_biases or name not in BIAS_GROUPS
        state.groups[name] = init_group(param, sparse=name in SPARSE_GROUPS, decay=decay)
    return state


def _bias_correction(beta: float, t: np.ndarray, dtype, ndim: int) -> np.ndarray:
    correction = (1.0 - np.power(beta, t.astype(np.float64))).astype(dtype)
    return correction.reshape(correction.shape + (1,) * (ndim - correction.ndim))


def _update(param: np.ndarray, grad: np.ndarray, m1: np.ndarray, m2: np.ndarray, t: np.ndarray,
            hyper: AdamHyper, decay: bool):
    """One Adam update on aligned arrays; t broadcasts over the leading axis."""
    g = grad + hyper.weight_decay * param if decay and hyper.weight_decay else grad
    m1 = hyper.beta1 * m1 + (1 - hyper.beta1) * g
    m2 = hyper.beta2 * m2 + (1 - hyper.beta2) * (g * g)
    m_hat = m1 / _bias_correction(hyper.beta1, t, param.dtype, param.ndim)
    v_hat = m2 / _bias_correction(hyper.beta2, t, param.dtype, param.ndim)
    new_param = param - hyper.lr * m_hat / (np.sqrt(v_hat) + hyper.eps)
    return new_param, m1, m2


def _check_finite(grad: np.ndarray, group: str) -> None:
    if not np.all(np.isfinite(grad)):
        raise NonFiniteError(f"non-finite gradient in group {group}")


def adam_step_dense(param: np.ndarray, grad: np.ndarray, state: AdamState, group: str) -> np.ndarray:
    """Update every entry of `param` in place."""
    if param.shape != grad.shape:
        raise ShapeMismatchError(f"{group}: gradient shape {grad.shape} != parameter shape {param.shape}")
    _check_finite(grad, group)
    gs = state.groups[group]
    t = gs.steps + 1
    new_param, gs.m1[...], gs.m2[...] = _update(param, grad, gs.m1, gs.m2, t, state.hyper, gs.decay)
    param[...] = new_param
    gs.steps[...] = t
    return param


def adam_step_sparse(param: np.ndarray, keys: np.ndarray, grad_rows: np.ndarray, state: AdamState,
                     group: str) -> np.ndarray:
    """Update only rows `keys` of `param` in place; untouched rows and their moments stay as they are."""
    keys = np.asarray(keys, dtype=np.int64)
    if len(keys) == 0:
        return param
    if grad_rows.shape != (len(keys),) + param.shape[1:]:
        raise ShapeMismatchError(f"{group}: slab shape {grad_rows.shape} does not match {len(keys)} keyed rows")
    if len(np.unique(keys)) != len(keys):
        raise InvalidInputError(f"{group}: duplicate keys in gradient slab")
    if keys.min() < 0 or keys.max() >= param.shape[0]:
        raise InvalidInputError(f"{group}: gradient key out of range [0, {param.shape[0]})")
    _check_finite(grad_rows, group)
    gs = state.groups[group]
    if not gs.sparse:
        raise InvalidInputError(f"{group} is a dense group")
    t = gs.steps[keys] + 1
    new_rows, m1_rows, m2_rows = _update(param[keys], grad_rows, gs.m1[keys], gs.m2[keys], t,
                                         state.hyper, gs.decay)
    param[keys] = new_rows
    gs.m1[keys] = m1_rows
    gs.m2[keys] = m2_rows
    gs.steps[keys] = t
    return param


def apply_gradients(params: ModelParams, grads: Gradients, state: AdamState) -> None:
    """Dense steps for full-width gradients, lazy row steps for sampled ones.

    Every group is checked before any is stepped, so a non-finite gradient leaves params and state untouched.
    """
    slabs = {"W_enc": grads.dW_enc_rows, "b_enc": grads.db_enc, "W_dec": grads.dW_dec_rows, "b_dec": grads.db_dec_rows}
    for group, slab in slabs.items():
        _check_finite(slab, group)
    if grads.dense:
        adam_step_dense(params.enc_weights, grads.dW_enc_rows, state, "W_enc")
        adam_step_dense(params.W_dec, grads.dW_dec_rows, state, "W_dec")
        adam_step_dense(params.b_dec, grads.db_dec_rows, state, "b_dec")
    else:
        adam_step_sparse(params.enc_weights, grads.enc_keys, grads.dW_enc_rows, state, "W_enc")
        adam_step_sparse(params.W_dec, grads.dec_keys, grads.dW_dec_rows, state, "W_dec")
        adam_step_sparse(params.b_dec, grads.dec_keys, grads.db_dec_rows, state, "b_dec")
    adam_step_dense(params.b_enc, grads.db_enc, state, "b_enc")
