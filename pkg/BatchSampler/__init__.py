# ./BatchSampler/__init__.py

from .epoch import EpochPlan, plan_epoch, epoch_rng, PRNG_NAME
from .batches import (SparseBatch, SampledBatch, gather_batch, downsample_columns,
                      full_width_batch, slice_batch, prepare_batch, sampled_input_size_stats,
                      iterate_epoch_batches)
from .inclusion import (inclusion_probability_first_order, inclusion_probability_exact,
                        compare_inclusion_probabilities, simulate_inclusion_frequency)
from .prefetch import prefetch

__all__ = [
    'EpochPlan',
    'plan_epoch',
    'epoch_rng',
    'PRNG_NAME',
    'SparseBatch',
    'SampledBatch',
    'gather_batch',
    'downsample_columns',
    'full_width_batch',
    'slice_batch',
    'prepare_batch',
    'sampled_input_size_stats',
    'iterate_epoch_batches',
    'inclusion_probability_first_order',
    'inclusion_probability_exact',
    'compare_inclusion_probabilities',
    'simulate_inclusion_frequency',
    'prefetch'
]
