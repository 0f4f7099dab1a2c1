#!/usr/bin/env python3
"""
Settings for the b-matching polytope toolkit.

Values come from the environment (or a .env file in the project root) and
fall back to desk-scale defaults. See ENV_SETUP.md for the full list.
"""

import os
from dotenv import load_dotenv

from errors import ConfigError

# Load environment variables
load_dotenv()


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(
            f"❌ {name} must be a whole number, got {raw!r}.\n\n"
            "Fix it in your .env file, for example:\n"
            f"  {name}={default}\n\n"
            "See ENV_SETUP.md for the list of settings."
        )
    if value < 0:
        raise ConfigError(
            f"❌ {name} must not be negative, got {value}.\n\n"
            f"Remove the line to use the default ({default})."
        )
    return value


def _flag_setting(name: str) -> bool:
    return os.getenv(name, '').strip().lower() in ('1', 'true', 'yes', 'on')


# Partition enumeration walks 3^|V| tri-partitions
MAX_VERTICES = _int_setting('BMATCH_MAX_VERTICES', 16)

# Vertex enumeration and the oracle walk edge subsets
MAX_EDGES = _int_setting('BMATCH_MAX_EDGES', 20)
ENUM_MAX_VERTICES = _int_setting('BMATCH_ENUM_MAX_VERTICES', 12)

CYCLE_VALIDATION_MAX_EDGES = _int_setting('BMATCH_CYCLE_VALIDATION_MAX_EDGES', 12)
FACE_CHECK_MAX_EDGES = _int_setting('BMATCH_FACE_CHECK_MAX_EDGES', 10)
ORACLE_MAX_POLYTOPE_VERTICES = _int_setting('BMATCH_ORACLE_MAX_POLYTOPE_VERTICES', 16)

# Cross-checks between independent computations (slow)
DEBUG_CHECKS = _flag_setting('BMATCH_DEBUG_CHECKS')

LOG_LEVEL = os.getenv('BMATCH_LOG_LEVEL', 'WARNING').upper()


def resolve_cap(value, default: int) -> int:
    """Return an explicit cap, or the configured default when value is None."""
    return default if value is None else value
