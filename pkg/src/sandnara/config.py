"""Run configuration and enumeration caps.

All enumerations in the library are guarded by an object cap so that a typo
in a size parameter fails fast instead of running for hours.  The default cap
can be overridden per call or globally through the ``SANDPILE_MAX_OBJECTS``
environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import ResourceLimit

DEFAULT_MAX_OBJECTS = 10**8

ENV_MAX_OBJECTS = "SANDPILE_MAX_OBJECTS"


def object_cap(override: int | None = None) -> int:
    """Effective enumeration cap: explicit override, else env var, else default."""
    if override is not None:
        if override < 1:
            raise ValueError("object cap must be >= 1")
        return override
    env = os.environ.get(ENV_MAX_OBJECTS)
    if env is not None:
        return max(1, int(env))
    return DEFAULT_MAX_OBJECTS


def guard_count(count: int, max_objects: int | None, what: str) -> int:
    """Raise ResourceLimit when an enumeration of `count` objects exceeds the cap."""
    cap = object_cap(max_objects)
    if count > cap:
        raise ResourceLimit(f"{what}: {count} objects exceeds cap {cap}")
    return count


@dataclass
class RunConfig:
    """Options shared by CLI commands.

    max_objects: enumeration cap (see `object_cap`).
    jobs: worker count for verification jobs that fan out over independent
        size pairs; 1 means sequential.
    output_format: "json", "csv" or "matrix".
    seed: RNG seed for randomized checks (abelian-property sampling).
    m, n: size parameters, where the command needs them.
    """

    max_objects: int | None = None
    jobs: int = 1
    output_format: str = "json"
    seed: int | None = None
    m: int | None = None
    n: int | None = None

    def __post_init__(self) -> None:
        if self.output_format not in ("json", "csv", "matrix"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def cap(self) -> int:
        return object_cap(self.max_objects)
