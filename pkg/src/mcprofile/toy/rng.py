"""Counter-based random streams for the toy study.

Every stream is a Philox4x64 generator keyed by ``(master_seed, purpose << 56
| seed)`` and started at counter zero, so the j-th draw of a stream depends
only on those three integers. Raw 64-bit words become uniforms in (0, 1) and
then standard normals through the inverse CDF, which consumes exactly one
word per draw.
"""

from dataclasses import dataclass

import numpy as np

from ..normal import norm_ppf

PURPOSE_DATA = 1
PURPOSE_LIKELIHOOD = 2
SEED_BITS = 56
MAX_SEED = (1 << SEED_BITS) - 1
_MASTER_LIMIT = 1 << 64


def _uniform_from_words(words):
    # top 53 bits, shifted half a step off zero: u in (0, 1) exclusive
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


@dataclass(frozen=True)
class SeededStream:
    """Deterministic standard-normal sequence identified by a seed."""

    seed: int
    master_seed: int = 0
    purpose: int = PURPOSE_LIKELIHOOD

    def __post_init__(self):
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError(f"seed must be in [0, 2**{SEED_BITS}), got {self.seed}")
        if not 0 <= self.master_seed < _MASTER_LIMIT:
            raise ValueError(f"master_seed must be in [0, 2**64), got {self.master_seed}")
        if self.purpose not in (PURPOSE_DATA, PURPOSE_LIKELIHOOD):
            raise ValueError(f"unknown stream purpose {self.purpose}")

    @property
    def key(self):
        return (self.master_seed, (self.purpose << SEED_BITS) | self.seed)

    def words(self, count):
        return np.random.Philox(key=list(self.key)).random_raw(count)

    def uniforms(self, count):
        return _uniform_from_words(self.words(count))

    def normals(self, count):
        """First ``count`` standard normals of the stream."""
        if count == 0:
            return np.empty(0)
        return np.atleast_1d(norm_ppf(self.uniforms(count)))


def normal_block(first_seed, nseeds, count, master_seed=0, purpose=PURPOSE_LIKELIHOOD):
    """Normals for consecutive seeds, shape ``(nseeds, count)``.

    Row ``i`` equals ``SeededStream(first_seed + i, ...).normals(count)``.
    """
    words = np.empty((nseeds, count), dtype=np.uint64)
    for i in range(nseeds):
        words[i] = SeededStream(first_seed + i, master_seed, purpose).words(count)
    return norm_ppf(_uniform_from_words(words)).reshape(nseeds, count)
