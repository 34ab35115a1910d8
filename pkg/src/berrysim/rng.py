"""Counter-based random substreams.

Every stochastic quantity is drawn from a Philox generator keyed by
(master_seed, domain, stream). Streams are independent and reproducible
regardless of the order in which they are instantiated, which keeps
ensembles bit-identical under any degree of parallelism.
"""

import hashlib

import numpy as np

NOISE_DOMAIN = 0
READOUT_DOMAIN = 1

_SEED_MASK = (1 << 63) - 1


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the substream identified by ``key``."""
    if master_seed < 0:
        raise ValueError("master_seed must be non-negative")
    seq = np.random.SeedSequence(master_seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(seq))


def derive_seed(master_seed: int, label: str) -> int:
    """Stable per-label seed, used to decouple sweep points of a preset."""
    digest = hashlib.sha256(f"{master_seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "little") & _SEED_MASK
