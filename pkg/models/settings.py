# models/settings.py
"""
Settings Model

This module implements the Settings class that holds the defaults every command
falls back on. It provides a centralized way to store and access:
1. Oracle bounds (primes, rank, per-prime length, subgroup enumeration cap)
2. Parser limits (largest accepted cyclic modulus)
3. Run options (log level, random seed for sampled sweeps)
"""

import logging
import os

from models.universe import UniverseBounds

LOG_LEVEL_VARIABLE = "TWOTHREE_LOG_LEVEL"


class Settings:
    """
    Settings class to store and manage run-wide defaults.

    Attributes
    ----------
    data : dict
        Dictionary containing the defaults:
        - primes : list[int]
            Torsion primes of the oracle universe
        - max_rank : int
            Largest free rank in the oracle universe (default=2)
        - max_length : int
            Largest length per prime in the oracle universe (default=3)
        - max_order : int
            Largest group enumerated subgroup by subgroup (default=144)
        - working_length : int or None
            Per-prime length of the fixpoint universe; None means 2 × max_length
        - max_modulus : int
            Largest modulus accepted in a module expression (default=2**63)
        - log_level : str
            Logging level name (default="WARNING")
        - seed : int
            Seed for sampled sweeps (default=0)
    """
    def __init__(self):
        """Initialize a new Settings instance with default values."""
        self.data = {
            "primes": [2, 3],
            "max_rank": 2,
            "max_length": 3,
            "max_order": 144,
            "working_length": None,
            "max_modulus": 2 ** 63,
            "log_level": "WARNING",
            "seed": 0,
        }

        # Environment override for the log level
        level = os.environ.get(LOG_LEVEL_VARIABLE)
        if level:
            self.data["log_level"] = level.upper()

    def update(self, **overrides):
        """
        Override defaults for one run. Values given as None are ignored.

        Raises
        ------
        KeyError
            If a key is not a known setting.
        """
        for key, value in overrides.items():
            if key not in self.data:
                raise KeyError(f"unknown setting {key!r}")
            if value is not None:
                self.data[key] = value
        return self

    @property
    def log_level(self) -> int:
        level = logging.getLevelName(str(self.data["log_level"]).upper())
        return level if isinstance(level, int) else logging.WARNING

    def bounds(self) -> UniverseBounds:
        """UniverseBounds built from the current values."""
        return UniverseBounds(
            primes=tuple(self.data["primes"]),
            max_rank=self.data["max_rank"],
            max_length_per_prime=self.data["max_length"],
            max_order=self.data["max_order"],
            working_length=self.data["working_length"],
        )
