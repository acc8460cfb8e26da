import logging
import os

from utils.basic_utils import resolve_seed
from utils.config import Config
from utils.distributed import init_workers
from utils.logger import setup_logger

logger = logging.getLogger(__name__)

# command line flag -> dotted config key
FLAG_KEYS = {
    "out": "output_dir",
    "seed": "seed",
    "jobs": "jobs",
    "mode": "solver.mode",
    "cap_vertices": "caps.vertices",
    "edge_prob": "synth.edge_prob",
    "pad_left": "synth.left_pad",
    "pad_right": "synth.right_pad",
    "pairs": "gap_demo.pairs",
    "delta_dup": "gap_demo.delta_dup",
}


def _nest(flat):
    out = {}
    for dotted, value in flat.items():
        sub = out
        keys = dotted.split(".")
        for k in keys[:-1]:
            sub = sub.setdefault(k, {})
        sub[keys[-1]] = value
    return out


def setup_config(args, opts):
    """Defaults, then `--config`, then flags, then trailing `key value` overrides.
    The seed falls back to $GAPFORGE_SEED before the configured value."""
    flags = {key: getattr(args, name, None) for name, key in FLAG_KEYS.items()}
    seed_flag = flags.pop("seed")
    config = Config.load(args.config, _nest(flags), opts)
    config.seed = resolve_seed(seed_flag, default=config.seed)
    return config


def setup_output_dir(output_dir, excludes=("run.log",)):
    """Create the output dir; warn when it already holds files from another run."""
    if not os.path.exists(output_dir):
        os.makedirs(output_dir, exist_ok=False)
    else:
        remaining = set(os.listdir(output_dir)) - set(excludes)
        if remaining:
            logger.warning(f"output dir {output_dir} already holds: {sorted(remaining)}")


def setup_main(args, opts):
    """
    Setup config, logger, output_dir, workers.
    Shared by every subcommand.
    """
    config = setup_config(args, opts)
    init_workers(config.jobs)
    setup_output_dir(config.output_dir)
    setup_logger(output=config.output_dir, color=config.log.color, name="gapforge",
                 level=logging.getLevelName(str(config.log.level).upper()))
    logger.info(f"config: {Config.pretty_text(config)}")
    Config.dump(config, os.path.join(config.output_dir, "config.json"))
    return config
