"""Counter-mode deterministic randomness (splitmix64).

Every random decision in the package is keyed by (seed, counter) through the
splitmix64 output function, so generation is order-independent, splittable and
reproducible across platforms and worker counts.  `counter_value(seed, i)`
equals the (i+1)-th output of the reference splitmix64 stream seeded with
`seed`; the frozen stream vectors live in the test suite.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """splitmix64 output function on a 64-bit state."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def counter_value(seed: int, ctr: int) -> int:
    """Output at stream position `ctr` (0-based) for the given seed."""
    state = (seed + (ctr + 1) * _GOLDEN) & _MASK
    return mix64(state)


def counter_values(seed: int, ctrs: np.ndarray) -> np.ndarray:
    """Vectorized counter_value; must agree with it bit for bit."""
    g = np.uint64(_GOLDEN)
    z = np.uint64(seed & _MASK) + (ctrs.astype(np.uint64) + np.uint64(1)) * g
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, *parts: int) -> int:
    """Fold integer parts into a fresh 64-bit seed, one mix per part."""
    s = seed & _MASK
    for part in parts:
        s = counter_value(s, part & _MASK)
    return s
