# ./Optimizer/__init__.py

from .adam import (AdamHyper, AdamState, GroupState, init_group, init_adam_state,
                   adam_step_dense, adam_step_sparse, apply_gradients)

__all__ = [
    'AdamHyper',
    'AdamState',
    'GroupState',
    'init_group',
    'init_adam_state',
    'adam_step_dense',
    'adam_step_sparse',
    'apply_gradients'
]
