# ./Commands/__init__.py

from .config import CliConfig, load_cli_config, read_config_file, preset_values
from .preprocess import cmd_preprocess
from .train import cmd_train
from .evaluate import cmd_evaluate
from .recommend import cmd_recommend
from .benchmark import cmd_benchmark
from .compare import cmd_compare

__all__ = [
    'CliConfig',
    'load_cli_config',
    'read_config_file',
    'preset_values',
    'cmd_preprocess',
    'cmd_train',
    'cmd_evaluate',
    'cmd_recommend',
    'cmd_benchmark',
    'cmd_compare'
]
