"""Size caps for the exhaustive computations.

Every cap can be overridden with an environment variable named
``HARMONIC_CAP_<FIELD>`` (upper case), or programmatically via
:func:`set_limits`. Rough cost guide on one core:

* ``set_partitions`` 8: Bell(8) = 4140 partitions, instant.
* ``volume`` 7: Bell(7)^2 ~ 7.7e5 partition pairs, about a minute.
* ``triples`` 5: F(5)^2 * 31 ~ 1.7e6 candidates, about half a minute.
* ``ehrhart`` 3: n = 4 boxes hold ~1e9 points; do not raise casually.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass


class LimitError(ValueError):
    """Raised when a request exceeds a configured size cap."""


class DomainError(ValueError):
    """Raised for malformed or out-of-domain inputs."""


@dataclass(frozen=True)
class Limits:
    set_partitions: int = 8
    triples: int = 5
    tables: int = 6
    volume: int = 7
    nonzero_count: int = 9
    trimmed_side: int = 12
    forest_pairs: int = 5
    ehrhart: int = 3
    edge_polytope_vertices: int = 10

    @classmethod
    def from_env(cls) -> "Limits":
        values = {}
        for field in dataclasses.fields(cls):
            raw = os.environ.get(f"HARMONIC_CAP_{field.name.upper()}")
            if raw is not None:
                values[field.name] = int(raw)
        return cls(**values)


_limits = Limits.from_env()


def get_limits() -> Limits:
    return _limits


def set_limits(**overrides: int) -> Limits:
    """Replace selected caps; returns the previous limits so callers can restore them."""
    global _limits
    previous = _limits
    _limits = dataclasses.replace(_limits, **overrides)
    return previous


def restore_limits(limits: Limits) -> None:
    global _limits
    _limits = limits


def check_cap(name: str, value: int, lower: int = 1) -> None:
    cap = getattr(_limits, name)
    if value < lower or value > cap:
        raise LimitError(f"{name}: n={value} outside [{lower}, {cap}]; "
                         f"override with HARMONIC_CAP_{name.upper()}")
