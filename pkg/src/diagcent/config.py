"""Size caps shared by the enumeration and matrix routines."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, fields, replace

__all__ = ["Caps", "CapExceeded", "caps", "override_caps", "HARD_LIMITS"]


class CapExceeded(ValueError):
    """A request exceeds a configured size cap."""


@dataclass
class Caps:
    max_partition_size: int = 12  # m in Pi_m, i.e. d <= 6
    max_graph_vertices: int = 12
    max_tensor_dim: int = 4096  # n**d
    molien_max_n: int = 8
    molien_max_d: int = 8
    max_gct_d: int = 12


# overrides beyond these are refused outright
HARD_LIMITS = Caps(
    max_partition_size=14,
    max_graph_vertices=14,
    max_tensor_dim=1 << 16,
    molien_max_n=1 << 16,
    molien_max_d=24,
    max_gct_d=16,
)

caps = Caps()


@contextlib.contextmanager
def override_caps(**kwargs):
    """Temporarily raise or lower caps, bounded by ``HARD_LIMITS``."""
    for k, v in kwargs.items():
        if v > getattr(HARD_LIMITS, k):
            raise CapExceeded(f"{k}={v} is above the hard limit {getattr(HARD_LIMITS, k)}")
    saved = replace(caps)
    for k, v in kwargs.items():
        setattr(caps, k, v)
    try:
        yield caps
    finally:
        for f in fields(Caps):
            setattr(caps, f.name, getattr(saved, f.name))
