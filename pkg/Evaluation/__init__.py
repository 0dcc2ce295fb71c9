# ./Evaluation/__init__.py

from .metrics import rank_items, recall_at_k, ndcg_at_k, RECALL_NORMALIZATIONS
from .protocol import EvalConfig, EvalReport, evaluate_split, write_report, compare_reports

__all__ = [
    'rank_items',
    'recall_at_k',
    'ndcg_at_k',
    'RECALL_NORMALIZATIONS',
    'EvalConfig',
    'EvalReport',
    'evaluate_split',
    'write_report',
    'compare_reports'
]
