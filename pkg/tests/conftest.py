import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from progset.field import build_field


@functools.lru_cache(maxsize=None)
def get_field(p, n=1, modulus=None):
    """Session-wide field cache; tables are immutable so sharing is safe."""
    return build_field(p, n, modulus)
