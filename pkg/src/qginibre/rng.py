"""Seeded, reproducible random streams.

Every stream is a Philox counter-based generator keyed by a 64-bit seed
passed through SplitMix64.  Child streams for replicas are derived with
``child_seed(seed, index)``::

    child_seed(s, i) = splitmix64((s + GOLDEN * (i + 1)) mod 2**64)

Gaussian variates come from the Marsaglia polar method applied to the
stream's uniforms, so the output depends only on the seed and on the
sequence of calls made on the stream.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x):
    """One round of the SplitMix64 finalizer on a Python int."""
    x = (x + GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def child_seed(seed, index):
    return splitmix64((int(seed) + GOLDEN * (int(index) + 1)) & MASK64)


class RandomStream:
    """Single-owner random stream.  Use :meth:`child` for parallel work."""

    def __init__(self, seed=0):
        self.seed = int(seed) & MASK64
        key = splitmix64(self.seed)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RandomStream(seed={self.seed})"

    def child(self, index):
        return RandomStream(child_seed(self.seed, index))

    def uniform(self, size=None):
        """Uniforms on [0, 1)."""
        return self._gen.random(size)

    def normal(self, size=None, scale=1.0):
        """Standard Gaussians by the polar method, multiplied by ``scale``."""
        shape = () if size is None else size
        count = int(np.prod(shape, dtype=np.int64))
        out = self._polar(count) * scale
        if size is None:
            return float(out[0])
        return out.reshape(shape)

    def _polar(self, count):
        out = np.empty(max(count, 1))
        filled = 0
        while filled < count:
            pairs = (count - filled + 1) // 2
            # acceptance probability is pi/4
            draw = pairs + pairs // 3 + 8
            v = 2.0 * self._gen.random((draw, 2)) - 1.0
            s = v[:, 0] ** 2 + v[:, 1] ** 2
            ok = (s > 0.0) & (s < 1.0)
            v, s = v[ok], s[ok]
            f = np.sqrt(-2.0 * np.log(s) / s)
            z = (v * f[:, None]).ravel()
            take = min(z.size, count - filled)
            out[filled:filled + take] = z[:take]
            filled += take
        return out[:count]


def as_stream(rng):
    """Accept a RandomStream, an integer seed, or None (seed 0)."""
    if isinstance(rng, RandomStream):
        return rng
    if rng is None:
        return RandomStream(0)
    if isinstance(rng, (int, np.integer)) and not isinstance(rng, bool):
        return RandomStream(int(rng))
    raise TypeError(f"expected a RandomStream, an integer seed or None, got {type(rng).__name__}")
