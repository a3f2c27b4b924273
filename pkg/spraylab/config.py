"""Configuration settings for the spraylab package."""

import os
from typing import Optional

from .exceptions import InputError

# --------------------------
# General settings
# --------------------------
# Project name and version
PROJECT_NAME = "SprayLab"
PROJECT_VERSION = "0.2.0"

# --------------------------
# Path configurations
# --------------------------
DEFAULT_OUTPUT_DIR = "outputs"  # Default output directory
DIRECTORY_STRUCTURE = {
    "REPORTS": "reports",    # Reports written by the CLI
    "FIXTURES": "fixtures",  # Regenerated worked examples
    "SUITES": "suites",      # Randomized verification suites
}

# --------------------------
# Random instance generation
# --------------------------
RANDOM = {
    "DEFAULT_SEED": 20240229,
    "SEED_ENV_VAR": "SPRAYLAB_SEED",
    "COORD_RANGE": 12,      # numerators drawn from [-COORD_RANGE, COORD_RANGE]
    "MAX_DENOMINATOR": 6,   # denominators drawn from [1, MAX_DENOMINATOR]
    "MAX_REJECTIONS": 10_000,
}

# --------------------------
# Algorithm parameters
# --------------------------
SPHERES = {
    "DEFAULT_SEED_QUADRANCE": 1,  # q_k used when a chain needs a seed
}

MESH = {
    "MAX_WORKERS": 1,  # 1 = sequential
    "CHUNKSIZE": 64,
}

DRIZZLE = {
    "CURVE_START": 0,         # first parameter of the moment-curve directions
    "CENTER_CURVE_START": 0,  # first parameter of the moment-curve centers
}

DIFFERENCE_AVOIDING = {
    "LADDER_FACTOR": 2,   # J = LADDER_FACTOR * m^2 * (|X - X| + 2)
    "MAX_DOUBLINGS": 32,
}

ESCAPE = {
    "MAX_WORKERS": 1,
    "CHUNKSIZE": 16,
}

# --------------------------
# Output parameters
# --------------------------
PROGRESS = {
    "ENABLED": False,
    "MIN_ITEMS": 200,  # no progress bar for shorter loops
}

REPORTS = {
    "JSON_INDENT": 2,
    "SORT_KEYS": True,
    "INCLUDE_TIMING": False,
}


def resolve_seed(cli_seed: Optional[int] = None) -> int:
    """
    Pick the seed for randomized runs.

    The SPRAYLAB_SEED environment variable overrides the command-line value,
    which overrides the configured default.

    Args:
        cli_seed: Seed given on the command line, if any

    Returns:
        The seed to use
    """
    env_value = os.environ.get(RANDOM["SEED_ENV_VAR"])
    if env_value is not None and env_value.strip() != "":
        try:
            return int(env_value)
        except ValueError as e:
            raise InputError(
                f"{RANDOM['SEED_ENV_VAR']} must be an integer, got {env_value!r}"
            ) from e
    if cli_seed is not None:
        return int(cli_seed)
    return RANDOM["DEFAULT_SEED"]


def progress_enabled(n_items: int, force: Optional[bool] = None) -> bool:
    """Whether a loop over n_items should show a tqdm bar."""
    enabled = PROGRESS["ENABLED"] if force is None else force
    return bool(enabled) and n_items >= PROGRESS["MIN_ITEMS"]
