"""Structured and random subsets used by the experiments.

Random sets are Bernoulli samples driven by the counter-mode PRNG keyed per
element, so the same (q, density, seed) always yields the same set, in any
evaluation order and on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDensity, ConfigError, EvenCharacteristic, NotADivisor, NotPrimeField
from .field import FieldTables
from .productsets import ElementSet
from .rng import counter_values

_SCALE = float(1 << 64)


@dataclass(frozen=True)
class GenSpec:
    """CLI-expressible description of a set generator."""

    kind: str  # random | qr | subgroup | interval | full | full-nonzero
    density: float | None = None
    d: int | None = None
    lo: int | None = None
    hi: int | None = None
    seed: int = 0


def random_subset(t: FieldTables, density: float, seed: int) -> ElementSet:
    """Bernoulli(density) subset, inclusion keyed by (seed, element index)."""
    if not 0.0 < density <= 1.0:
        raise BadDensity(f"density must be in (0, 1], got {density}")
    threshold = int(density * _SCALE)
    if threshold >= 1 << 64:
        return ElementSet.full(t.q)
    vals = counter_values(seed, np.arange(t.q))
    return ElementSet(t.q, vals < np.uint64(threshold))


def quadratic_residues(t: FieldTables) -> ElementSet:
    """The (q-1)/2 nonzero squares; rejected in characteristic 2."""
    if t.p == 2:
        raise EvenCharacteristic("every element is a square in characteristic 2")
    mask = np.zeros(t.q, dtype=bool)
    mask[t.exp[0::2]] = True
    return ElementSet(t.q, mask)


def multiplicative_subgroup(t: FieldTables, d: int) -> ElementSet:
    """The unique multiplicative subgroup of size d, for d | q-1."""
    group = t.order
    if d < 1 or group % d != 0:
        raise NotADivisor(f"d={d} does not divide q-1={group}")
    step = group // d
    mask = np.zeros(t.q, dtype=bool)
    mask[t.exp[np.arange(d) * step]] = True
    return ElementSet(t.q, mask)


def interval_set(t: FieldTables, lo: int, hi: int) -> ElementSet:
    """Residue interval {lo..hi}; prime fields only."""
    if t.n != 1:
        raise NotPrimeField("intervals need the natural residue order of a prime field")
    if not 0 <= lo <= hi < t.q:
        raise ConfigError(f"interval [{lo}, {hi}] out of range [0, {t.q})")
    mask = np.zeros(t.q, dtype=bool)
    mask[lo : hi + 1] = True
    return ElementSet(t.q, mask)


def make_set(t: FieldTables, spec: GenSpec) -> ElementSet:
    """Materialize a GenSpec against a field."""
    if spec.kind == "random":
        if spec.density is None:
            raise ConfigError("random generator needs a density")
        return random_subset(t, spec.density, spec.seed)
    if spec.kind == "qr":
        return quadratic_residues(t)
    if spec.kind == "subgroup":
        if spec.d is None:
            raise ConfigError("subgroup generator needs d")
        return multiplicative_subgroup(t, spec.d)
    if spec.kind == "interval":
        if spec.lo is None or spec.hi is None:
            raise ConfigError("interval generator needs lo and hi")
        return interval_set(t, spec.lo, spec.hi)
    if spec.kind == "full":
        return ElementSet.full(t.q)
    if spec.kind == "full-nonzero":
        return ElementSet.full_nonzero(t.q)
    raise ConfigError(f"unknown generator kind {spec.kind!r}")
