# ./AutoEncoder/__init__.py

from .params import Activation, ModelParams, init_params
from .forward import (ALL, ColumnSet, ForwardCache, apply_input_dropout, encode, decode,
                      forward, bce_loss_and_grad)
from .backward import Gradients, backward
from .predict import fold_in_matrix, predict_scores, predict_scores_batch
from .checkpoint import save_checkpoint, load_checkpoint

__all__ = [
    'Activation',
    'ModelParams',
    'init_params',
    'ALL',
    'ColumnSet',
    'ForwardCache',
    'apply_input_dropout',
    'encode',
    'decode',
    'forward',
    'bce_loss_and_grad',
    'Gradients',
    'backward',
    'fold_in_matrix',
    'predict_scores',
    'predict_scores_batch',
    'save_checkpoint',
    'load_checkpoint'
]
