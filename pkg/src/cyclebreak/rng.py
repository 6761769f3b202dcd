"""Deterministic randomness plumbing.

All sampling code takes an explicit ``random.Random`` handle.  Replica farms
derive child seeds from a master seed with :func:`derive_seed`, which hashes
the master and a key path through SHA-256, so the split is reproducible on
every platform and independent of scheduling order.

Lazy graph sources need a stream per vertex that does not depend on query
order; they use the splitmix64 mixer below instead of a shared generator.
"""

from __future__ import annotations

import hashlib
import random

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, *keys: object) -> int:
    """64-bit child seed for (master, keys), stable across platforms."""
    text = ":".join([str(master)] + [str(k) for k in keys])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def spawn(master: int, *keys: object) -> random.Random:
    """Fresh Mersenne-Twister handle seeded from the derived child seed."""
    return random.Random(derive_seed(master, *keys))


def mix64(state: int, value: int) -> int:
    """Fold ``value`` into ``state`` (splitmix64 finalizer), returning a new state."""
    z = (state + 0x9E3779B97F4A7C15 * (value + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def unit_from(state: int) -> int:
    """Uniform 64-bit integer extracted from a mixed state."""
    return mix64(state, 0x243F6A8885A308D3)
